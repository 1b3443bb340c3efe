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

#include "lspec/operators.hpp"

#include <cmath>

namespace lspec {

namespace {

void check_same_dim(const Operator& a, const Operator& b, const char* op) {
  if (a.dim() != b.dim())
    throw ShapeError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
}

}  // namespace

Operator::Operator(DenseMatrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols())
    throw ShapeError("Operator must be square, got " + std::to_string(mat_.rows()) + "x" +
                     std::to_string(mat_.cols()));
  if (!mat_.allFinite()) throw ParameterError("Operator entries must be finite");
}

Operator Operator::Zero(int dim) { return Operator(DenseMatrix::Zero(dim, dim)); }

Operator Operator::Identity(int dim) { return Operator(DenseMatrix::Identity(dim, dim)); }

const SpMat& Operator::sparse() const {
  if (!have_sparse_) {
    sparse_ = mat_.sparseView(1.0, 0.0);  // keep exact nonzeros
    sparse_.makeCompressed();
    have_sparse_ = true;
  }
  return sparse_;
}

double Operator::density() const {
  const auto n = mat_.size();
  if (n == 0) return 0.0;
  Eigen::Index nnz = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (mat_(i) != Complex(0, 0)) ++nnz;
  return static_cast<double>(nnz) / static_cast<double>(n);
}

bool Operator::is_hermitian(double tol) const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::operator+(const Operator& o) const {
  check_same_dim(*this, o, "operator+");
  return Operator(mat_ + o.mat_);
}

Operator Operator::operator-(const Operator& o) const {
  check_same_dim(*this, o, "operator-");
  return Operator(mat_ - o.mat_);
}

Operator Operator::operator*(const Operator& o) const {
  check_same_dim(*this, o, "operator*");
  return Operator(mat_ * o.mat_);
}

Operator destroy(HilbertDim dim) {
  const int d = dim.value;
  DenseMatrix a = DenseMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(a));
}

Operator create(HilbertDim dim) { return destroy(dim).adjoint(); }

Operator number_op(HilbertDim dim) {
  const int d = dim.value;
  DenseMatrix n = DenseMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return Operator(std::move(n));
}

Operator sigma_x() {
  DenseMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(std::move(m));
}

Operator sigma_y() {
  DenseMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return Operator(std::move(m));
}

Operator sigma_z() {
  DenseMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(std::move(m));
}

Operator sigma_minus() {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(1, 0) = 1;  // |g><e| with basis order (e, g)
  return Operator(std::move(m));
}

DenseVector vectorize(const Operator& a) {
  const int d = a.dim();
  DenseVector v(static_cast<Eigen::Index>(d) * d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) v(static_cast<Eigen::Index>(m) * d + n) = a(m, n);
  return v;
}

Operator unvectorize(const DenseVector& v, HilbertDim dim) {
  const int d = dim.value;
  if (v.size() != static_cast<Eigen::Index>(d) * d)
    throw ShapeError("unvectorize: length " + std::to_string(v.size()) + " != dim^2 = " +
                     std::to_string(static_cast<long long>(d) * d));
  DenseMatrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = v(static_cast<Eigen::Index>(r) * d + c);
  return Operator(std::move(m));
}

Complex hs_inner(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "hs_inner");
  // Tr[A^dagger B] = sum_mn conj(A_mn) B_mn; Eigen's dot conjugates the left.
  return a.dense().reshaped().dot(b.dense().reshaped());
}

double hs_norm(const Operator& a) { return a.dense().norm(); }

}  // namespace lspec
