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

#include <complex>
#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lspec/errors.hpp"

namespace lspec {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<Complex>;  // compressed-column storage

/// Dimension of a truncated Hilbert space (Fock cutoff or spin dimension).
/// Anything below 2 is rejected at construction.
struct HilbertDim {
  int value;
  HilbertDim(int v) : value(v) {
    if (v < 2) throw DimensionError("Hilbert dimension must be >= 2, got " + std::to_string(v));
  }
};

/// A complex operator on a truncated Hilbert space.
///
/// Entries are held densely; a compressed sparse copy is built lazily and
/// used for supermatrix assembly whenever the fill fraction is below 25%
/// (both storage paths agree to 1e-13, see the unit tests). Operators are
/// immutable after construction and safe to share across threads.
class Operator {
 public:
  Operator() = default;
  explicit Operator(DenseMatrix m);

  static Operator Zero(int dim);
  static Operator Identity(int dim);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const DenseMatrix& dense() const { return mat_; }

  /// Compressed view of the entries (built on first use, then cached).
  const SpMat& sparse() const;
  double density() const;
  bool prefers_sparse() const { return density() < kSparseDensityThreshold; }

  Operator adjoint() const { return Operator(mat_.adjoint()); }
  Operator transpose() const { return Operator(mat_.transpose()); }
  Operator conjugate() const { return Operator(mat_.conjugate()); }
  Complex trace() const { return mat_.trace(); }
  bool is_hermitian(double tol) const;

  Complex operator()(int r, int c) const { return mat_(r, c); }

  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  Operator operator*(Complex s) const { return Operator(mat_ * s); }
  Operator operator/(Complex s) const { return Operator(mat_ / s); }
  friend Operator operator*(Complex s, const Operator& a) { return a * s; }

  static constexpr double kSparseDensityThreshold = 0.25;

 private:
  DenseMatrix mat_;
  mutable SpMat sparse_;        // lazy cache
  mutable bool have_sparse_ = false;
};

/// Bosonic annihilation operator on the truncated basis {|0>, ..., |dim-1>}:
/// a|n> = sqrt(n)|n-1>.
Operator destroy(HilbertDim dim);
/// a^dagger, the conjugate transpose of destroy(dim).
Operator create(HilbertDim dim);
/// Number operator a^dagger a = diag(0, 1, ..., dim-1).
Operator number_op(HilbertDim dim);

// Pauli matrices on the basis {|e>, |g>}; sigma_minus = |g><e| lowers.
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
Operator sigma_minus();

/// Row-stacking vectorization: element (m, n) goes to index m*D + n, so
/// vec(A X B) = (A kron B^T) vec(X). This is the convention the Liouvillian
/// supermatrix assumes; do not mix with column stacking.
DenseVector vectorize(const Operator& a);
Operator unvectorize(const DenseVector& v, HilbertDim dim);

/// Hilbert-Schmidt inner product <A, B> = Tr[A^dagger B].
Complex hs_inner(const Operator& a, const Operator& b);
/// Hilbert-Schmidt norm, equal to the Frobenius norm of the entries.
double hs_norm(const Operator& a);

}  // namespace lspec
