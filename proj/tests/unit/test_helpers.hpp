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

#include <random>

#include "lspec/liouvillian.hpp"
#include "lspec/models.hpp"
#include "lspec/operators.hpp"

namespace lspec::testing {

inline DenseMatrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex(g(rng), g(rng));
  return m;
}

inline Operator random_hermitian(int dim, std::mt19937_64& rng) {
  DenseMatrix a = random_complex(dim, dim, rng);
  return Operator(((a + a.adjoint()) / 2.0).eval());
}

inline Operator random_density(int dim, std::mt19937_64& rng) {
  DenseMatrix a = random_complex(dim, dim, rng);
  DenseMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return Operator(std::move(rho));
}

/// Random Lindblad model: Hermitian H, `n_jumps` dense jump operators.
inline ModelSpec random_model(int dim, int n_jumps, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(0.1, 2.0);
  ModelSpec m;
  m.dim = dim;
  m.name = "random";
  m.hamiltonian = random_hermitian(dim, rng);
  for (int i = 0; i < n_jumps; ++i)
    m.jumps.push_back({Operator(random_complex(dim, dim, rng) / std::sqrt(2.0 * dim)), rate(rng)});
  m.params = {{"gamma", 1.0}};
  validate(m);
  return m;
}

/// Dense Kronecker product, the oracle for the vectorization identity.
inline DenseMatrix kron_dense(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Direct evaluation of the Lindblad right-hand side, independent of the
/// supermatrix assembly path.
inline DenseMatrix lindblad_rhs(const ModelSpec& m, const DenseMatrix& rho) {
  const DenseMatrix& h = m.hamiltonian.dense();
  DenseMatrix out = Complex(0, -1) * (h * rho - rho * h);
  for (const auto& j : m.jumps) {
    const DenseMatrix& g = j.op.dense();
    const DenseMatrix gd = g.adjoint();
    out += (j.rate / 2.0) * (2.0 * g * rho * gd - gd * g * rho - rho * gd * g);
  }
  return out;
}

}  // namespace lspec::testing
