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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lspec/liouvillian.hpp"
#include "lspec/operators.hpp"

namespace lspec {

/// One Liouvillian eigenpair: L rho_i = lambda_i rho_i with ||rho_i||_HS = 1.
/// `left` is the dual eigenmatrix when it was requested; after
/// biorthonormalization <left_i, right_j> = delta_ij.
struct EigenPair {
  Complex value;
  Operator right;
  std::optional<Operator> left;
  int index = 0;
  double residual = 0.0;
};

/// Thrown when the numerical kernel of L is more than one-dimensional; the
/// members of the kernel travel with the exception so the caller can route
/// them to the symmetry machinery.
class DegenerateKernelError : public Error {
 public:
  DegenerateKernelError(const std::string& what, std::vector<Operator> kernel_basis)
      : Error(what), kernel(std::move(kernel_basis)) {}
  std::vector<Operator> kernel;
};

struct SolverOptions {
  int k = 6;                     // requested eigenpairs (iterative path)
  Complex shift = Complex(0, 0);
  bool compute_left = false;
  double zero_tol_factor = 1e-9;    // zero_tol = factor * ||L||_1
  double residual_factor = 1e-9;    // iterative residual <= factor * ||L||_1
  Eigen::Index dense_limit = 10000; // refuse dense work above this many rows
  int max_subspace = 200;
  std::uint64_t seed = 42;
  double psd_floor = 1e-10;  // clip density-matrix eigenvalues in [-floor, 0)
};

/// Sorted Liouvillian spectrum. Eigenvalues ascend in |Re lambda| with the
/// tie-break (|Re lambda|, Im lambda, |lambda|), so conjugate partners order
/// deterministically. pairs[0] is the zero mode when |lambda_0| <= zero_tol.
struct Spectrum {
  std::vector<EigenPair> pairs;
  double zero_tol = 0.0;
  double norm1 = 0.0;

  /// Liouvillian gap |Re lambda_1| (asymptotic decay rate). Needs >= 2 pairs.
  double gap() const;
  double im_lambda1() const;
  const EigenPair& zero_mode() const;  // throws if |lambda_0| > zero_tol

  /// Sorted index of the unique trace-carrying zero mode. Near criticality
  /// |Re lambda_1| can sink below zero_tol while the kernel stays
  /// one-dimensional; the trace separates rho_0 from the traceless slow
  /// modes (only the zero mode may carry trace). Throws
  /// DegenerateKernelError when several trace-carrying modes sit inside
  /// zero_tol, and ConvergenceError when none does.
  std::size_t trace_mode_index(double trace_floor = 1e-3) const;
};

/// Sorting comparator used throughout (ascending |Re|, then Im, then |.|).
bool spectral_order(const Complex& a, const Complex& b);

/// All D^2 eigenpairs by dense diagonalization of the explicit supermatrix.
/// Refuses when D^2 exceeds opts.dense_limit; use leading_spectrum instead.
Spectrum full_spectrum(const SuperMatrix& l, const SolverOptions& opts = {});

/// The k eigenpairs nearest `shift` by shift-invert Arnoldi iteration,
/// re-sorted by |Re lambda|. Residuals satisfy
/// ||L rho - lambda rho|| <= residual_factor * ||L||_1.
Spectrum leading_spectrum(const SuperMatrix& l, int k, Complex shift,
                          const SolverOptions& opts = {});

/// The unique trace-one fixed point of L. Hermitian by construction, PSD up
/// to the clipping floor, ||L rho_ss|| <= 1e-10 ||L||_1. Multiple numerical
/// zero modes raise DegenerateKernelError carrying the kernel basis.
Operator steady_state(const SuperMatrix& l, const SolverOptions& opts = {});

/// (gap, Im lambda_1) from a computed spectrum or directly from L.
std::pair<double, double> liouvillian_gap(const Spectrum& s);
std::pair<double, double> liouvillian_gap(const SuperMatrix& l, const SolverOptions& opts = {});

/// Decomposition of a traceless Hermitian eigenmatrix into density matrices:
/// rho_i proportional to plus - minus, Tr plus = Tr minus = 1, disjoint
/// supports. `weight` reconstructs the Hermitian representative of rho_i as
/// weight * (plus - minus).
struct PhaseSplit {
  Operator plus;
  Operator minus;
  double weight = 0.0;
};

/// Splits the eigenmatrix of a real eigenvalue via its spectral
/// decomposition. Complex eigenvalues are refused (use hermitize first), as
/// is the trace-carrying mode whose spectrum has only one sign.
PhaseSplit hermitian_split(const EigenPair& p, double tol = 1e-8);

/// Hermitian combinations rho + rho^dag and i(rho - rho^dag) of a conjugate
/// eigenpair, HS-normalized. The second comes back zero when the pair is
/// self-conjugate.
std::pair<Operator, Operator> hermitize(const EigenPair& p, const EigenPair& p_conj,
                                        double tol = 1e-8);

struct JordanReport {
  int algebraic = 0;
  int geometric = 0;
  bool indeterminate = false;  // singular values straddled the rank threshold
};

/// Multiplicity report at an eigenvalue cluster: algebraic from the count of
/// eigenvalues within `cluster_radius` of lambda, geometric from a
/// rank-revealing SVD of (L - lambda I) with singular values below
/// rank_tol * sigma_max counted as zero. cluster_radius <= 0 picks
/// 1e-6 * max(1, |lambda|).
JordanReport detect_jordan(const SuperMatrix& l, Complex lambda, double rank_tol = 1e-8,
                           double cluster_radius = -1.0, const SolverOptions& opts = {});

/// Reproducible Hermitian representative of an eigenmatrix with real
/// eigenvalue: rotates the global phase so the largest-modulus diagonal
/// entry is real positive (falling back to a trace-of-square phase when the
/// diagonal vanishes), then symmetrizes and renormalizes.
Operator fix_phase_hermitian(const Operator& rho);

/// Post-processing shared by the steady-state solvers: phase fix, Hermiticity
/// check, trace normalization, PSD clipping at `psd_floor` (eigenvalues in
/// [-floor, 0) are clipped to 0; anything more negative is a StateError).
Operator normalize_steady_density(const Operator& raw, double psd_floor = 1e-10);

}  // namespace lspec
