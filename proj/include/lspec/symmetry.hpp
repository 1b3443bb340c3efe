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

/// A weak symmetry U = V . V^dag built from a unitary V with V^n
/// proportional to the identity. Eigenvalues of U are the n-th roots of
/// unity z_j = exp(2 pi i j / n); the basis element |m><l| of the vectorized
/// space carries the sector label j.
///
/// For number-phase symmetries (V diagonal in the computational basis) the
/// sector of each vec index is classified analytically and is exact. A
/// non-diagonal V goes through a numeric eigenbasis W; sector indices then
/// refer to the W-rotated vec basis.
class SymmetrySuperOp {
 public:
  static SymmetrySuperOp from_unitary(const Operator& v, int order, double tol = 1e-12);

  const Operator& v() const { return v_; }
  int order() const { return order_; }
  int op_dim() const { return v_.dim(); }
  Eigen::Index size() const { return static_cast<Eigen::Index>(op_dim()) * op_dim(); }

  /// z_j = exp(2 pi i j / order)
  Complex sector_eigenvalue(int j) const;
  int sector_of_vec_index(Eigen::Index idx) const { return sector_of_index_[idx]; }
  std::vector<std::vector<Eigen::Index>> sector_indices() const;

  /// U rho = V rho V^dag
  Operator apply(const Operator& rho) const;

  bool has_basis() const { return has_basis_; }
  /// Rotations between the computational vec basis and the symmetry basis.
  DenseVector to_symmetry_basis(const DenseVector& v) const;
  DenseVector from_symmetry_basis(const DenseVector& v) const;

 private:
  SymmetrySuperOp() = default;
  Operator v_;
  int order_ = 0;
  std::vector<int> sector_of_index_;
  bool has_basis_ = false;
  DenseMatrix basis_;  // W, columns = eigenvectors of V (when not diagonal)
};

/// V = exp(2 pi i a^dag a / n); |m><l| lies in sector (m - l) mod n. n = 2 is
/// the photon-parity symmetry of the two-photon Kerr model.
SymmetrySuperOp number_parity_symmetry(HilbertDim dim, int n);

/// True iff ||U^{-1} L U - L|| <= tol * ||L||, evaluated on the explicit
/// supermatrix (Frobenius norms) or with `probes` random matrix-free probes.
bool check_symmetry(const SuperMatrix& l, const SymmetrySuperOp& s, double tol,
                    int probes = 16);

struct Sector {
  int label = 0;  // j, with eigenvalue z_j
  Complex z;
  std::vector<Eigen::Index> indices;  // vec indices (symmetry basis)
  SpMat block;
};

/// L cast to block-diagonal form over symmetry sectors. Index sets partition
/// {0 .. D^2-1}; the direct sum of the block spectra is the full spectrum.
struct SectorDecomposition {
  int op_dim = 0;
  std::vector<Sector> sectors;
  const SymmetrySuperOp* symmetry = nullptr;  // non-owning

  /// Lifts a block vector back to an operator on the full space
  /// (computational basis).
  Operator embed(int sector_label, const DenseVector& block_vec) const;
};

/// Requires check_symmetry to pass at `tol`; throws otherwise. Cross-sector
/// leakage above tol * ||L||_1 is also an error.
SectorDecomposition sector_decompose(const SuperMatrix& l, const SymmetrySuperOp& s,
                                     double tol = 1e-10);

/// Leading eigenpairs of one sector block (nearest `shift`, re-sorted by
/// |Re|), with eigenmatrices embedded back into the full space. Small blocks
/// are solved densely.
struct SectorSpectrum {
  int label = 0;
  Complex z;
  std::vector<EigenPair> pairs;
};
SectorSpectrum sector_leading_spectrum(const SectorDecomposition& dec, int label, int k,
                                       Complex shift, const SolverOptions& opts = {});
std::vector<SectorSpectrum> sector_leading_spectra(const SectorDecomposition& dec, int k,
                                                   Complex shift,
                                                   const SolverOptions& opts = {});

/// Steady state solved inside the z = 1 block (where the trace lives).
Operator sector_steady_state(const SectorDecomposition& dec, const SolverOptions& opts = {});

/// Sector label of an (approximate) eigenoperator of U, or -1 when more than
/// `tol` of its weight is spread over other sectors.
int sector_of_operator(const SymmetrySuperOp& s, const Operator& rho, double tol = 1e-8);

/// Zero mode of one symmetry sector, for the broken-basis construction.
struct LabeledMode {
  int sector = 0;
  Operator rho;
};

/// Builds the n symmetry-broken density matrices rho~_l = sum_j z_j^l
/// rho_j / Tr[rho_0] from one zero mode per sector: Hermitian, unit trace,
/// cyclically permuted by the symmetry (U rho~_l = rho~_{l+1 mod n}). The
/// inversion sum_l (z_k^*)^l rho~_l / n recovers the sector modes. Phases are
/// fixed so that <rho_j^dag, rho_{n-j}> is real positive.
std::vector<Operator> symmetry_broken_basis(const std::vector<LabeledMode>& modes,
                                            const SymmetrySuperOp& s, double tol = 1e-6);

}  // namespace lspec
