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
#include <vector>

#include "lspec/operators.hpp"

namespace lspec::detail {

struct ArnoldiOptions {
  double rel_tol = 1e-9;   // accept when ||A x - lambda x|| <= rel_tol * norm1
  int max_subspace = 200;  // hard cap on the Krylov basis
  int chunk = 40;          // initial basis growth between Ritz extractions
  std::uint64_t seed = 42;
};

struct ArnoldiEigs {
  std::vector<Complex> values;    // eigenvalues of A nearest the shift, k of them
  DenseMatrix vectors;            // unit-norm eigenvectors, one column per value
  std::vector<double> residuals;  // true residuals ||A x - lambda x||
  int subspace_used = 0;
};

/// Eigenpairs of a sparse matrix nearest `shift`, by shift-invert Arnoldi
/// with explicit locking (see arnoldi.cpp). Every returned pair passed the
/// true-residual test on A. A singular factorization is retried with a
/// slightly perturbed shift (geometric steps of 1e-10 * max(norm1, 1)).
/// `norm1` is the caller-supplied ||A||_1 entering the residual threshold.
ArnoldiEigs shift_invert_eigs(const SpMat& a, int k, Complex shift, double norm1,
                              const ArnoldiOptions& opts = {});

}  // namespace lspec::detail
