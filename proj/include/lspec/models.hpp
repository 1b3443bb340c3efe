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

#include <map>
#include <string>
#include <vector>

#include "lspec/operators.hpp"

namespace lspec {

/// One dissipation channel: jump operator and its rate. The master equation
/// uses the normalization  drho/dt = -i[H,rho] + sum_i (rate_i/2) D[op_i]rho
/// with D[G]rho = 2 G rho G^dag - G^dag G rho - rho G^dag G, i.e. the rate/2
/// prefactor multiplies a dissipator that already carries the factor 2.
struct JumpChannel {
  Operator op;
  double rate;
};

/// Declarative description of a Lindblad model: Hamiltonian, jump channels,
/// and the parameter record they were built from.
struct ModelSpec {
  Operator hamiltonian;
  std::vector<JumpChannel> jumps;
  int dim = 0;
  std::string name;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

/// Checks the ModelSpec invariants: Hermitian Hamiltonian (to 1e-12 * norm),
/// non-negative rates, consistent dimensions. Throws on violation.
void validate(const ModelSpec& m);

/// Driven-dissipative Kerr resonator:
///   H = -Delta a^dag a + (U/2) a^dag a^dag a a + F (a^dag + a),
/// single-photon losses at rate gamma.
ModelSpec kerr_model(double delta, double u, double f, double gamma, HilbertDim cutoff);

/// Kerr model in thermodynamic scaling U = U~/N, F = F~ sqrt(N); U|F|^2 is
/// independent of N. meta records N.
ModelSpec kerr_thermo(double delta, double u_tilde, double f_tilde, double gamma, double big_n,
                      HilbertDim cutoff);

/// Two-photon-driven Kerr resonator:
///   H = -Delta a^dag a + (U/2) a^dag a^dag a a + (G/2)(a^dag a^dag + a a),
/// jumps (a, gamma) and (a^2, eta).
ModelSpec two_photon_model(double delta, double u, double g, double gamma, double eta,
                           HilbertDim cutoff);

/// Two-photon model in thermodynamic scaling U = U~/N, eta = eta~/N.
ModelSpec two_photon_thermo(double delta, double u_tilde, double g, double gamma,
                            double eta_tilde, double big_n, HilbertDim cutoff);

/// Spin-1/2 with two competing decay channels:
///   H = (omega/2) sigma_z, jumps (sigma_minus, epsilon) and (sigma_x, gamma).
/// Exactly solvable; non-diagonalizable at omega = gamma.
ModelSpec two_level_model(double omega, double epsilon, double gamma);

/// Default Fock cutoff for Kerr-family scans: max(20, ceil(8 N)). Scans
/// validate it post hoc by checking the tail population of the steady state.
int default_cutoff(double big_n);

}  // namespace lspec
