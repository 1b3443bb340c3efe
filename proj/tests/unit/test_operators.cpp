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

#include <doctest.h>

#include "lspec/operators.hpp"
#include "test_helpers.hpp"

using namespace lspec;
using namespace lspec::testing;

TEST_CASE("destroy implements the sqrt(n) rule on the truncated basis") {
  const Operator a2 = destroy(2);
  CHECK(a2(0, 1) == Complex(1, 0));
  CHECK(a2(0, 0) == Complex(0, 0));
  CHECK(a2(1, 0) == Complex(0, 0));
  CHECK(a2(1, 1) == Complex(0, 0));

  const Operator a3 = destroy(3);
  CHECK(std::abs(a3(1, 2) - std::sqrt(2.0)) < 1e-15);

  const int d = 7;
  const Operator n = destroy(d).adjoint() * destroy(d);
  for (int k = 0; k < d; ++k) CHECK(std::abs(n(k, k) - Complex(k, 0)) < 1e-14);

  CHECK_THROWS_AS(destroy(1), DimensionError);
}

TEST_CASE("truncation breaks the commutator only in the last level") {
  const int d = 6;
  const Operator a = destroy(d);
  const DenseMatrix comm = (a * a.adjoint() - a.adjoint() * a).dense();
  for (int i = 0; i < d - 1; ++i) CHECK(std::abs(comm(i, i) - 1.0) < 1e-14);
  CHECK(std::abs(comm(d - 1, d - 1) + Complex(d - 1, 0)) < 1e-12);
}

TEST_CASE("vectorize is row-stacking and unvectorize inverts it") {
  DenseMatrix a(2, 2);
  a << 1, 2, 3, 4;
  const DenseVector v = vectorize(Operator(a));
  CHECK(v(0) == Complex(1, 0));
  CHECK(v(1) == Complex(2, 0));
  CHECK(v(2) == Complex(3, 0));
  CHECK(v(3) == Complex(4, 0));

  std::mt19937_64 rng(7);
  const Operator r(random_complex(5, 5, rng));
  CHECK((unvectorize(vectorize(r), 5).dense() - r.dense()).norm() == 0.0);

  CHECK_THROWS_AS(unvectorize(DenseVector::Zero(5), 2), ShapeError);
}

TEST_CASE("vec(A X B) = (A kron B^T) vec(X)") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const DenseMatrix a = random_complex(3, 3, rng);
    const DenseMatrix x = random_complex(3, 3, rng);
    const DenseMatrix b = random_complex(3, 3, rng);
    const DenseVector lhs = vectorize(Operator((a * x * b).eval()));
    const DenseVector rhs = kron_dense(a, b.transpose()) * vectorize(Operator(x));
    CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm());
  }
}

TEST_CASE("Hilbert-Schmidt inner product and norm") {
  const Operator id = Operator::Identity(2);
  CHECK(std::abs(hs_inner(id, id) - Complex(2, 0)) < 1e-15);
  CHECK(std::abs(hs_norm(id) - std::sqrt(2.0)) < 1e-15);
  CHECK(hs_norm(Operator::Zero(3)) == 0.0);

  DenseMatrix p0 = DenseMatrix::Zero(2, 2), p1 = DenseMatrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  CHECK(std::abs(hs_inner(Operator(p0), Operator(p1))) < 1e-15);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const Operator a(random_complex(4, 4, rng));
    const Operator b(random_complex(4, 4, rng));
    // vector-dot oracle
    CHECK(std::abs(hs_inner(a, b) - vectorize(a).dot(vectorize(b))) < 1e-12);
    // trace oracle
    CHECK(std::abs(hs_inner(a, b) - (a.dense().adjoint() * b.dense()).trace()) < 1e-12);
    // conjugate symmetry
    CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-12);
    // elementwise-sum oracle for the norm
    double sum = 0;
    for (Eigen::Index i = 0; i < a.dense().size(); ++i) sum += std::norm(a.dense()(i));
    CHECK(std::abs(hs_norm(a) * hs_norm(a) - sum) < 1e-10);
    // triangle inequality
    CHECK(hs_norm(a + b) <= hs_norm(a) + hs_norm(b) + 1e-12);
  }
  CHECK_THROWS_AS(hs_inner(Operator::Identity(2), Operator::Identity(3)), ShapeError);
}

TEST_CASE("hs_inner is sesquilinear") {
  std::mt19937_64 rng(5);
  const Operator a(random_complex(3, 3, rng)), b(random_complex(3, 3, rng)),
      c(random_complex(3, 3, rng));
  const Complex alpha(0.7, -1.3), beta(-0.2, 0.4);
  const Complex lhs = hs_inner(a, alpha * b + beta * c);
  const Complex rhs = alpha * hs_inner(a, b) + beta * hs_inner(a, c);
  CHECK(std::abs(lhs - rhs) < 1e-12);
  const Complex lhs2 = hs_inner(alpha * a, b);
  CHECK(std::abs(lhs2 - std::conj(alpha) * hs_inner(a, b)) < 1e-12);
}

TEST_CASE("sparse storage agrees with dense entries") {
  const Operator a = destroy(40);
  CHECK(a.prefers_sparse());
  CHECK((DenseMatrix(a.sparse()) - a.dense()).cwiseAbs().maxCoeff() <= 1e-13);

  std::mt19937_64 rng(9);
  const Operator dense_op(random_complex(6, 6, rng));
  CHECK(!dense_op.prefers_sparse());
  CHECK((DenseMatrix(dense_op.sparse()) - dense_op.dense()).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("operator invariants") {
  DenseMatrix bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(Operator{bad}, ShapeError);
  DenseMatrix naninf(2, 2);
  naninf << 1, std::numeric_limits<double>::quiet_NaN(), 0, 1;
  CHECK_THROWS_AS(Operator{naninf}, ParameterError);
}
