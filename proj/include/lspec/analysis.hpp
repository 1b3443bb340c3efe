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

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lspec/models.hpp"
#include "lspec/spectra.hpp"

namespace lspec {

/// Tr[rho O] for Hermitian O. The imaginary residue is checked against
/// 1e-10 * scale and discarded.
double expectation(const Operator& rho, const Operator& obs);

/// Uhlmann fidelity f(rho, xi) = Tr sqrt(sqrt(rho) xi sqrt(rho)), in [0, 1],
/// symmetric, 1 iff the states coincide. Inputs must be density matrices up
/// to the usual clipping floor.
double fidelity(const Operator& rho, const Operator& xi);

/// (1/2) Tr |a - b| for Hermitian a, b.
double trace_distance(const Operator& a, const Operator& b);

/// One grid point of a parameter sweep. Fidelities are NaN whenever
/// lambda_1 is complex at that point (the Hermitian split needs a real
/// eigenvalue); a non-"ok" status flags a per-point solver failure.
struct ScanRecord {
  double zeta = 0;
  double big_n = 0;
  double gap = std::numeric_limits<double>::quiet_NaN();
  double im_lambda1 = std::numeric_limits<double>::quiet_NaN();
  double density = std::numeric_limits<double>::quiet_NaN();  // <a^dag a>/N
  double fid_xi = std::numeric_limits<double>::quiet_NaN();   // f(rho_ss, (rho1+ + rho1-)/2)
  double fid_plus = std::numeric_limits<double>::quiet_NaN();
  double fid_minus = std::numeric_limits<double>::quiet_NaN();
  int cutoff_used = 0;
  std::string status = "ok";
  std::optional<JordanReport> jordan;

  double one_minus_f() const { return 1.0 - fid_xi; }
};

/// zeta, N, cutoff -> model; cutoff <= 0 asks for the default heuristic.
using ModelFamily = std::function<ModelSpec(double zeta, double big_n, int cutoff)>;

struct ScanOptions {
  SolverOptions solver;
  double im_tol_factor = 1e-8;  // x gamma: |Im lambda_1| below this is "real"
  double tail_tol = 1e-8;       // allowed steady-state weight in the top two Fock levels
  int max_cutoff_retries = 3;   // each retry grows the cutoff by 1.5x
  int cutoff = 0;               // 0 = default_cutoff(N)
  int threads = 0;              // 0 = LSPEC_THREADS env or hardware cores
};

/// Sweeps zeta at fixed N: per point the steady state, leading-k spectrum,
/// gap, Im lambda_1, rescaled density, and the fidelities against the
/// split of rho_1. Per-point failures land in the record's status and the
/// scan continues. Output order follows the grid regardless of threading.
std::vector<ScanRecord> scan(const ModelFamily& family, const std::vector<double>& zeta_grid,
                             double big_n, int k, const ScanOptions& opts = {});

/// Grid edge where the |Im lambda_1| < im_tol classification flips (in
/// either direction), refined by bisection with `im_lambda1_at` to a
/// relative width of rel_tol. The new regime must persist for the following
/// two grid points. Throws AnalysisError when no flip is bracketed.
double bifurcation_point(const std::vector<ScanRecord>& records,
                         const std::function<double(double)>& im_lambda1_at, double im_tol,
                         double rel_tol = 1e-3);

/// Bifurcation point of the slow complex-conjugate pair, followed across the
/// grid by nearest-neighbor matching in the complex plane (Euclidean
/// distance). Positional |Re|-sorting can momentarily demote the pair below
/// unrelated real modes before the merge; the tracked variant is immune to
/// that. `modes_at` returns the slowest eigenvalues at a grid value; the
/// leftmost grid point must lie inside the complex window of the pair.
double bifurcation_point_tracked(const std::vector<double>& grid,
                                 const std::function<std::vector<Complex>(double)>& modes_at,
                                 double im_tol, double rel_tol = 1e-3);

/// Least-squares fit of G_B(N) = G_c + A N^(-exponent), linear in
/// (log A, exponent) at fixed G_c with an outer 1-d search over G_c.
struct PowerLawFit {
  double amplitude = 0;
  double exponent = 0;
  double critical_value = 0;  // fitted G_c
  double residual = 0;        // rms misfit of log(G_B - G_c)
  std::array<double, 3> variance{};  // var(log A), var(exponent), var(G_c)
};
PowerLawFit power_law_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace lspec
