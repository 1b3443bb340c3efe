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

#include <cstdio>
#include <unsupported/Eigen/SparseExtra>

#include "lspec/liouvillian.hpp"
#include "test_helpers.hpp"

using namespace lspec;
using namespace lspec::testing;

TEST_CASE("two-level supermatrix null vector is the analytic steady state") {
  const ModelSpec m = two_level_model(0.5, 0.5, 1.0);
  const SuperMatrix l = build_liouvillian(m);
  // dense oracle: eigenvector of the smallest-|lambda| eigenvalue
  Eigen::ComplexEigenSolver<DenseMatrix> es{DenseMatrix(l.matrix())};
  Eigen::Index which = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&which);
  CHECK(std::abs(es.eigenvalues()(which)) < 1e-12);
  Operator rho = unvectorize(es.eigenvectors().col(which), 2);
  rho = Operator(rho.dense() / rho.trace());
  CHECK(std::abs(rho(0, 0) - Complex(0.4, 0)) < 1e-10);
  CHECK(std::abs(rho(1, 1) - Complex(0.6, 0)) < 1e-10);
  CHECK(std::abs(rho(0, 1)) < 1e-10);
}

TEST_CASE("single-photon decay acts as expected on |1><1|") {
  ModelSpec m;
  m.dim = 2;
  m.name = "decay";
  m.hamiltonian = Operator::Zero(2);
  const double gamma = 0.7;
  m.jumps = {{destroy(2), gamma}};
  const SuperMatrix l = build_liouvillian(m);
  DenseMatrix rho = DenseMatrix::Zero(2, 2);
  rho(1, 1) = 1;
  const Operator out = apply_liouvillian(l, Operator(rho));
  CHECK(std::abs(out(0, 0) - Complex(gamma, 0)) < 1e-13);
  CHECK(std::abs(out(1, 1) + Complex(gamma, 0)) < 1e-13);
  CHECK(std::abs(out(0, 1)) < 1e-14);
}

TEST_CASE("supermatrix action equals the direct master-equation evaluation") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    const ModelSpec m = random_model(5, 2, rng);
    const SuperMatrix l = build_liouvillian(m);
    const DenseMatrix rho = random_complex(5, 5, rng);
    const DenseVector via_matrix = l.matrix() * vectorize(Operator(rho));
    const DenseMatrix direct = lindblad_rhs(m, rho);
    CHECK((via_matrix - vectorize(Operator(direct))).norm() < 1e-12 * direct.norm());
  }
}

TEST_CASE("generator is trace preserving and linear") {
  std::mt19937_64 rng(22);
  const ModelSpec m = random_model(4, 2, rng);
  const SuperMatrix l = build_liouvillian(m);
  for (int rep = 0; rep < 100; ++rep) {
    const Operator rho = random_hermitian(4, rng);
    const Operator lr = l.apply(rho);
    CHECK(std::abs(lr.trace()) < 1e-12 * std::max(1.0, hs_norm(rho)));
  }
  const Operator r1 = random_hermitian(4, rng), r2 = random_hermitian(4, rng);
  const Complex a(0.3, -0.8), b(1.1, 0.2);
  const Operator lhs = l.apply(a * r1 + b * r2);
  const Operator rhs = a * l.apply(r1) + b * l.apply(r2);
  CHECK(hs_norm(lhs - rhs) < 1e-12 * hs_norm(rhs));
}

TEST_CASE("columns of the supermatrix unvectorize to traceless operators") {
  std::mt19937_64 rng(23);
  const ModelSpec m = random_model(3, 1, rng);
  const SuperMatrix l = build_liouvillian(m);
  const SpMat& mat = l.matrix();
  for (Eigen::Index c = 0; c < mat.cols(); ++c) {
    const Operator col = unvectorize(DenseMatrix(mat).col(c), 3);
    CHECK(std::abs(col.trace()) < 1e-12);
  }
}

TEST_CASE("matrix-free and explicit representations agree") {
  std::mt19937_64 rng(24);
  const ModelSpec m = random_model(6, 2, rng);
  const SuperMatrix l = build_liouvillian(m);
  for (int rep = 0; rep < 50; ++rep) {
    const DenseVector x = random_complex(36, 1, rng);
    const DenseVector via_mat = l.matrix() * x;
    const DenseVector via_action = vectorize(l.apply(unvectorize(x, 6)));
    CHECK((via_mat - via_action).norm() < 1e-12 * via_mat.norm());
  }
}

TEST_CASE("oversize assembly falls back to matrix-free") {
  std::mt19937_64 rng(25);
  const ModelSpec m = random_model(4, 1, rng);
  LiouvillianOptions opts;
  opts.max_explicit_size = 8;  // force the fallback
  const SuperMatrix l = build_liouvillian(m, opts);
  CHECK(!l.has_matrix());
  CHECK_THROWS_AS(l.matrix(), DimensionError);
  const DenseMatrix rho = random_complex(4, 4, rng);
  CHECK((l.apply(Operator(rho)).dense() - lindblad_rhs(m, rho)).norm() < 1e-12);
}

TEST_CASE("matrix market export round-trips") {
  std::mt19937_64 rng(26);
  const ModelSpec m = random_model(3, 1, rng);
  const SuperMatrix l = build_liouvillian(m);
  const std::string path = "lspec_test_export.mtx";
  save_matrix_market(l, path);
  SpMat back;
  REQUIRE(Eigen::loadMarket(back, path));
  CHECK((DenseMatrix(back) - DenseMatrix(l.matrix())).cwiseAbs().maxCoeff() < 1e-12);
  std::remove(path.c_str());
}
