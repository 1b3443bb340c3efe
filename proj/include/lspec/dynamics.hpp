// Copyright 2026 The lspec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "lspec/spectra.hpp"

namespace lspec {

struct ExpmOptions {
  double tol = 1e-10;               // local error target per Krylov substep
  int krylov_dim = 30;
  Eigen::Index dense_limit = 10000; // scaling-and-squaring below this size
  bool force_krylov = false;
};

/// e^{L t} rho0. Dense scaling-and-squaring on the explicit supermatrix when
/// it fits, Krylov propagation with adaptive step halving otherwise. t < 0
/// is refused (the map is not invertible-positive backwards).
Operator evolve_expm(const SuperMatrix& l, const Operator& rho0, double t,
                     const ExpmOptions& opts = {});

/// Coefficients of rho0 = sum_i c_i rho_i in the eigenbasis, via the
/// biorthonormal pairing c_i = <L_i, rho0>. Requires a complete spectrum
/// with left eigenmatrices; a Jordan-degenerate spectrum is refused (run
/// detect_jordan to see why).
std::vector<Complex> decompose_state(const Operator& rho0, const Spectrum& spec);

/// sum_i c_i e^{lambda_i t} rho_i. Conjugate-pair terms combine to a real
/// matrix for physical inputs.
Operator propagate_spectral(const std::vector<Complex>& coeffs, const Spectrum& spec, double t);

/// Numerical vs closed-form decay of <sigma_x>, <sigma_y> for the two-level
/// model at its Jordan point omega = gamma, starting from
/// rho(0) = [[1/2, b], [b*, 1/2]]. The closed form carries the factor
/// t*omega*(Re b + Im b), so the decay is polynomial-times-exponential.
struct JordanDecayResult {
  std::vector<double> times;
  std::vector<double> sx_numeric, sy_numeric;
  std::vector<double> sx_closed, sy_closed;
  double max_rel_error_x = 0.0;
  double max_rel_error_y = 0.0;
};
JordanDecayResult jordan_decay_check(double omega, double epsilon, double gamma, Complex b,
                                     const std::vector<double>& times);

}  // namespace lspec
