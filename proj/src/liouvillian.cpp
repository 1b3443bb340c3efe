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

#include "lspec/liouvillian.hpp"

#include <memory>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/SparseExtra>

namespace lspec {

SuperMatrix::SuperMatrix(HilbertDim op_dim, SpMat matrix)
    : op_dim_(op_dim.value), matrix_(std::move(matrix)) {
  if (matrix_->rows() != size() || matrix_->cols() != size())
    throw ShapeError("SuperMatrix: explicit matrix must be D^2 x D^2");
}

SuperMatrix::SuperMatrix(HilbertDim op_dim, ApplyFn action)
    : op_dim_(op_dim.value), action_(std::move(action)) {
  if (!action_) throw ParameterError("SuperMatrix: empty action");
}

SuperMatrix::SuperMatrix(HilbertDim op_dim, SpMat matrix, ApplyFn action)
    : op_dim_(op_dim.value), matrix_(std::move(matrix)), action_(std::move(action)) {
  if (matrix_->rows() != size() || matrix_->cols() != size())
    throw ShapeError("SuperMatrix: explicit matrix must be D^2 x D^2");
}

const SpMat& SuperMatrix::matrix() const {
  if (!matrix_)
    throw DimensionError(
        "SuperMatrix: no explicit matrix (assembly was skipped above the size limit); "
        "use the matrix-free action");
  return *matrix_;
}

Operator SuperMatrix::apply(const Operator& rho) const {
  if (rho.dim() != op_dim_) throw ShapeError("SuperMatrix::apply: operator dim mismatch");
  if (action_) return action_(rho);
  return unvectorize(*matrix_ * vectorize(rho), op_dim_);
}

DenseVector SuperMatrix::apply_vec(const DenseVector& v) const {
  if (v.size() != size()) throw ShapeError("SuperMatrix::apply_vec: length mismatch");
  if (matrix_) return *matrix_ * v;
  return vectorize(action_(unvectorize(v, op_dim_)));
}

double SuperMatrix::norm1() const {
  if (norm1_ >= 0) return norm1_;
  if (matrix_) {
    double best = 0;
    const SpMat& m = *matrix_;
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
      double s = 0;
      for (SpMat::InnerIterator it(m, c); it; ++it) s += std::abs(it.value());
      best = std::max(best, s);
    }
    norm1_ = best;
  } else {
    // probe estimate: max over a few seeded random unit-1-norm vectors
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> g;
    double best = 0;
    for (int p = 0; p < 8; ++p) {
      DenseVector x(size());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(g(rng), g(rng));
      x /= x.cwiseAbs().sum();
      best = std::max(best, apply_vec(x).cwiseAbs().sum());
    }
    norm1_ = best;
  }
  return norm1_;
}

SuperMatrix build_liouvillian(const ModelSpec& m, const LiouvillianOptions& opts) {
  validate(m);
  const int d = m.dim;
  const Eigen::Index size = static_cast<Eigen::Index>(d) * d;

  // Matrix-free action evaluates the Lindblad right-hand side directly.
  struct Channel {
    DenseMatrix g, gd, gdg;
    double rate;
  };
  auto channels = std::make_shared<std::vector<Channel>>();
  for (const auto& j : m.jumps) {
    Channel c;
    c.g = j.op.dense();
    c.gd = c.g.adjoint();
    c.gdg = c.gd * c.g;
    c.rate = j.rate;
    channels->push_back(std::move(c));
  }
  auto h = std::make_shared<DenseMatrix>(m.hamiltonian.dense());
  SuperMatrix::ApplyFn action = [h, channels](const Operator& rho) {
    const DenseMatrix& r = rho.dense();
    DenseMatrix out = Complex(0, -1) * ((*h) * r - r * (*h));
    for (const auto& c : *channels)
      out += (c.rate / 2.0) * (2.0 * (c.g * r * c.gd.eval()) - c.gdg * r - r * c.gdg);
    return Operator(std::move(out));
  };

  if (size > opts.max_explicit_size) return SuperMatrix(d, std::move(action));

  // Explicit assembly, Eq. form: -i(H x 1 - 1 x H^T) + sum (rate/2)(...).
  // Kronecker factors go through the sparse path when the operator is
  // sparse enough; both paths agree to 1e-13.
  auto sp = [](const Operator& a) {
    return a.prefers_sparse() ? a.sparse() : SpMat(a.dense().sparseView());
  };
  SpMat id(d, d);
  id.setIdentity();
  const Operator& hop = m.hamiltonian;
  SpMat hs = sp(hop);
  SpMat l =
      Complex(0, -1) *
      (Eigen::kroneckerProduct(hs, id).eval() -
       Eigen::kroneckerProduct(id, SpMat(hs.transpose())).eval());
  for (const auto& j : m.jumps) {
    SpMat g = sp(j.op);
    SpMat gc = g.conjugate();
    SpMat gdg = SpMat(g.adjoint()) * g;
    l += (j.rate / 2.0) *
         (2.0 * Eigen::kroneckerProduct(g, gc).eval() -
          Eigen::kroneckerProduct(gdg, id).eval() -
          Eigen::kroneckerProduct(id, SpMat(gdg.transpose())).eval());
  }
  l.makeCompressed();
  return SuperMatrix(d, std::move(l), std::move(action));
}

Operator apply_liouvillian(const SuperMatrix& l, const Operator& rho) { return l.apply(rho); }

void save_matrix_market(const SuperMatrix& l, const std::string& path) {
  if (!Eigen::saveMarket(l.matrix(), path))
    throw IoError("save_matrix_market: failed to write " + path);
}

}  // namespace lspec
