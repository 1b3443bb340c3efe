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

#include <functional>
#include <optional>
#include <string>

#include "lspec/models.hpp"
#include "lspec/operators.hpp"

namespace lspec {

/// A superoperator acting on vectorized operators.
///
/// Holds an explicit D^2 x D^2 sparse matrix, a matrix-free action on
/// operators, or both. The two representations agree to 1e-12 relative (a
/// tested invariant). Immutable after construction; concurrent applies are
/// fine.
class SuperMatrix {
 public:
  using ApplyFn = std::function<Operator(const Operator&)>;

  SuperMatrix(HilbertDim op_dim, SpMat matrix);
  SuperMatrix(HilbertDim op_dim, ApplyFn action);
  SuperMatrix(HilbertDim op_dim, SpMat matrix, ApplyFn action);

  /// Dimension D of the underlying Hilbert space.
  int op_dim() const { return op_dim_; }
  /// Dimension D^2 of the vectorized space.
  Eigen::Index size() const { return static_cast<Eigen::Index>(op_dim_) * op_dim_; }

  bool has_matrix() const { return matrix_.has_value(); }
  const SpMat& matrix() const;

  Operator apply(const Operator& rho) const;
  DenseVector apply_vec(const DenseVector& v) const;

  /// 1-norm of the supermatrix; exact when explicit, otherwise a seeded
  /// random-probe lower-bound estimate. Used for scale-aware tolerances.
  double norm1() const;

 private:
  int op_dim_;
  std::optional<SpMat> matrix_;
  ApplyFn action_;
  mutable double norm1_ = -1.0;  // lazy
};

struct LiouvillianOptions {
  /// Refuse explicit assembly above this many rows (D^2); the returned
  /// SuperMatrix is then matrix-free only.
  Eigen::Index max_explicit_size = 250000;
};

/// Assembles the Liouvillian of a Lindblad model. In row-stacking convention
/// the supermatrix reads
///   L = -i (H kron 1 - 1 kron H^T)
///       + sum_i (rate_i/2)(2 G_i kron G_i^* - G_i^dag G_i kron 1
///                          - 1 kron G_i^T G_i^*),
/// so that L vec(rho) = vec(-i[H,rho] + sum_i (rate_i/2) D[G_i] rho).
SuperMatrix build_liouvillian(const ModelSpec& m, const LiouvillianOptions& opts = {});

/// Right-hand side of the master equation, evaluated matrix-free if possible.
Operator apply_liouvillian(const SuperMatrix& l, const Operator& rho);

/// Writes the explicit supermatrix in Matrix Market coordinate format.
void save_matrix_market(const SuperMatrix& l, const std::string& path);

}  // namespace lspec
