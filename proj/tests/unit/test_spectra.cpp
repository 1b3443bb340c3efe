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

#include <algorithm>

#include "lspec/spectra.hpp"
#include "test_helpers.hpp"

using namespace lspec;
using namespace lspec::testing;

namespace {

// multiset comparison up to tolerance, by greedy nearest matching
bool same_multiset(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const Complex& x : a) {
    auto best = std::min_element(b.begin(), b.end(), [&](const Complex& p, const Complex& q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    if (best == b.end() || std::abs(*best - x) > tol) return false;
    b.erase(best);
  }
  return true;
}

std::vector<Complex> values_of(const Spectrum& s) {
  std::vector<Complex> v;
  for (const auto& p : s.pairs) v.push_back(p.value);
  return v;
}

}  // namespace

TEST_CASE("two-level spectrum matches the closed-form eigenvalues") {
  const SuperMatrix l = build_liouvillian(two_level_model(0.5, 0.5, 1.0));
  const Spectrum s = full_spectrum(l);
  REQUIRE(s.pairs.size() == 4);
  const double root = std::sqrt(0.75);
  CHECK(std::abs(s.pairs[0].value) < 1e-10);
  CHECK(std::abs(s.pairs[1].value - Complex(-1.25 + root, 0)) < 1e-10);
  CHECK(std::abs(s.pairs[2].value - Complex(-1.25 - root, 0)) < 1e-10);
  CHECK(std::abs(s.pairs[3].value - Complex(-2.5, 0)) < 1e-10);
}

TEST_CASE("closed-form spectrum at other parameter points") {
  // epsilon = 0, omega = gamma: {0, -gamma, -gamma, -2 gamma}
  {
    const Spectrum s = full_spectrum(build_liouvillian(two_level_model(1.0, 0.0, 1.0)));
    std::vector<Complex> expect = {{0, 0}, {-1, 0}, {-1, 0}, {-2, 0}};
    CHECK(same_multiset(values_of(s), expect, 1e-9));
  }
  // epsilon = 0, omega = 0: pure sigma_x dephasing, {0, 0, -2 gamma, -2 gamma}
  {
    const Spectrum s = full_spectrum(build_liouvillian(two_level_model(0.0, 0.0, 1.0)));
    std::vector<Complex> expect = {{0, 0}, {0, 0}, {-2, 0}, {-2, 0}};
    CHECK(same_multiset(values_of(s), expect, 1e-9));
  }
}

TEST_CASE("undriven cavity spectrum at cutoff 2") {
  ModelSpec m;
  m.dim = 2;
  m.name = "decay";
  m.hamiltonian = Operator::Zero(2);
  m.jumps = {{destroy(2), 0.8}};
  const Spectrum s = full_spectrum(build_liouvillian(m));
  std::vector<Complex> expect = {{0, 0}, {-0.4, 0}, {-0.4, 0}, {-0.8, 0}};
  CHECK(same_multiset(values_of(s), expect, 1e-10));
}

TEST_CASE("spectrum properties on random models") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const ModelSpec m = random_model(4, 2, rng);
    const SuperMatrix l = build_liouvillian(m);
    const Spectrum s = full_spectrum(l);

    // non-positive real parts
    for (const auto& p : s.pairs) CHECK(p.value.real() <= s.zero_tol);
    // closed under conjugation
    std::vector<Complex> vals = values_of(s), conj;
    for (const Complex& v : vals) conj.push_back(std::conj(v));
    CHECK(same_multiset(vals, conj, 1e-8));
    // exactly one mode carries trace (nondegenerate case)
    int traced = 0;
    for (const auto& p : s.pairs)
      if (std::abs(p.right.trace()) > 1e-6) ++traced;
    CHECK(traced == 1);
    // decaying modes are traceless (trace preservation)
    for (const auto& p : s.pairs)
      if (std::abs(p.value.real()) > s.zero_tol) CHECK(std::abs(p.right.trace()) <= 1e-9);
    // sorting is ascending in |Re|
    for (std::size_t i = 1; i < s.pairs.size(); ++i)
      CHECK(std::abs(s.pairs[i - 1].value.real()) <=
            std::abs(s.pairs[i].value.real()) + 1e-14);
  }
}

TEST_CASE("Hermitian representative exists for simple real eigenvalues") {
  std::mt19937_64 rng(32);
  const ModelSpec m = random_model(4, 1, rng);
  const Spectrum s = full_spectrum(build_liouvillian(m));
  for (const auto& p : s.pairs) {
    if (std::abs(p.value.imag()) > 1e-10) continue;
    // skip near-degenerate real eigenvalues
    int close = 0;
    for (const auto& q : s.pairs)
      if (std::abs(q.value - p.value) < 1e-6) ++close;
    if (close > 1) continue;
    const Operator h = fix_phase_hermitian(p.right);
    CHECK(h.is_hermitian(1e-12));
    CHECK(1.0 - std::abs(hs_inner(h, p.right)) < 1e-8);
  }
}

TEST_CASE("biorthogonality of left and right eigenmatrices") {
  std::mt19937_64 rng(33);
  const ModelSpec m = random_model(3, 2, rng);
  SolverOptions opts;
  opts.compute_left = true;
  const Spectrum s = full_spectrum(build_liouvillian(m), opts);
  for (const auto& pi : s.pairs) {
    REQUIRE(pi.left.has_value());
    for (const auto& pj : s.pairs) {
      const Complex o = hs_inner(*pi.left, pj.right);
      if (pi.index == pj.index)
        CHECK(std::abs(o - Complex(1, 0)) < 1e-8);
      else
        CHECK(std::abs(o) < 1e-8);
    }
  }
}

TEST_CASE("full_spectrum refuses oversized problems") {
  const ModelSpec m = kerr_model(1, 1, 1, 1, 20);
  SolverOptions opts;
  opts.dense_limit = 100;
  CHECK_THROWS_AS(full_spectrum(build_liouvillian(m), opts), DimensionError);
}

TEST_CASE("leading_spectrum recovers the slow modes") {
  // two-level: k = 2 gives {0, lambda_1}
  {
    const SuperMatrix l = build_liouvillian(two_level_model(0.5, 0.5, 1.0));
    const Spectrum s = leading_spectrum(l, 2, Complex(0, 0));
    REQUIRE(s.pairs.size() == 2);
    CHECK(std::abs(s.pairs[0].value) < 1e-10);
    CHECK(std::abs(s.pairs[1].value - Complex(-1.25 + std::sqrt(0.75), 0)) < 1e-8);
  }
  // undriven cavity: all eigenvalues real, modulus order = |Re| order
  {
    ModelSpec m;
    m.dim = 3;
    m.name = "decay";
    m.hamiltonian = Operator::Zero(3);
    m.jumps = {{destroy(3), 1.0}};
    const SuperMatrix l = build_liouvillian(m);
    const Spectrum dense = full_spectrum(l);
    const Spectrum lead = leading_spectrum(l, 4, Complex(0, 0));
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(lead.pairs[i].value - dense.pairs[i].value) < 1e-8);
  }
  // generic model: every returned value sits in the dense spectrum and the
  // residuals meet the contract
  {
    std::mt19937_64 rng(34);
    const ModelSpec m = random_model(5, 2, rng);
    const SuperMatrix l = build_liouvillian(m);
    const Spectrum dense = full_spectrum(l);
    const Spectrum lead = leading_spectrum(l, 6, Complex(0, 0));
    for (const auto& p : lead.pairs) {
      double best = 1e300;
      for (const auto& q : dense.pairs) best = std::min(best, std::abs(p.value - q.value));
      CHECK(best < 1e-8);
      CHECK(p.residual <= 1e-9 * std::max(l.norm1(), 1.0));
      CHECK(std::abs(hs_norm(p.right) - 1.0) < 1e-12);
    }
  }
  CHECK_THROWS_AS(
      leading_spectrum(build_liouvillian(two_level_model(1, 1, 1)), 1, Complex(0, 0)),
      ParameterError);
}

TEST_CASE("steady state of the two-level model") {
  const Operator rho = steady_state(build_liouvillian(two_level_model(0.5, 0.5, 1.0)));
  CHECK(std::abs(rho(0, 0) - Complex(0.4, 0)) < 1e-10);
  CHECK(std::abs(rho(1, 1) - Complex(0.6, 0)) < 1e-10);
  CHECK(std::abs(rho(0, 1)) < 1e-10);
  CHECK(std::abs(rho.trace() - Complex(1, 0)) < 1e-14);
}

TEST_CASE("undriven Kerr cavity empties into the vacuum") {
  const Operator rho = steady_state(build_liouvillian(kerr_model(2.0, 1.5, 0.0, 1.0, 10)));
  CHECK(std::abs(rho(0, 0) - Complex(1, 0)) < 1e-9);
  for (int i = 1; i < 10; ++i) CHECK(std::abs(rho(i, i)) < 1e-9);
}

TEST_CASE("trace-aware zero-mode selection near criticality") {
  // unique kernel: the trace singles out rho_0
  {
    const SuperMatrix l = build_liouvillian(two_level_model(0.5, 0.5, 1.0));
    const Spectrum s = leading_spectrum(l, 3, Complex(0, 0));
    CHECK(s.trace_mode_index() == 0);
  }
  // genuinely degenerate kernel: sigma_z dephasing
  {
    ModelSpec m;
    m.dim = 2;
    m.name = "dephase";
    m.hamiltonian = Operator::Zero(2);
    m.jumps = {{sigma_z(), 1.0}};
    const Spectrum s = leading_spectrum(build_liouvillian(m), 4, Complex(0, 0));
    CHECK_THROWS_AS(s.trace_mode_index(), DegenerateKernelError);
  }
}

TEST_CASE("sparse path pairs left eigenmatrices from the adjoint problem") {
  SolverOptions opts;
  opts.compute_left = true;
  const SuperMatrix l = build_liouvillian(two_level_model(0.5, 0.5, 1.0));
  const Spectrum s = leading_spectrum(l, 4, Complex(0, 0), opts);
  for (const auto& pi : s.pairs) {
    REQUIRE(pi.left.has_value());
    for (const auto& pj : s.pairs) {
      const Complex o = hs_inner(*pi.left, pj.right);
      if (pi.index == pj.index)
        CHECK(std::abs(o - Complex(1, 0)) < 1e-6);
      else
        CHECK(std::abs(o) < 1e-6);
    }
  }
}

TEST_CASE("degenerate kernels are reported, not averaged") {
  // pure sigma_z dephasing leaves every diagonal state stationary
  ModelSpec m;
  m.dim = 2;
  m.name = "dephase";
  m.hamiltonian = Operator::Zero(2);
  m.jumps = {{sigma_z(), 1.0}};
  const SuperMatrix l = build_liouvillian(m);
  CHECK_THROWS_AS(steady_state(l), DegenerateKernelError);
  try {
    steady_state(l);
  } catch (const DegenerateKernelError& e) {
    CHECK(e.kernel.size() == 2);
  }
}

TEST_CASE("liouvillian gap and the imaginary part of lambda_1") {
  {
    const auto [gap, im] = liouvillian_gap(build_liouvillian(two_level_model(0.5, 0.5, 1.0)));
    CHECK(std::abs(gap - (1.25 - std::sqrt(0.75))) < 1e-9);
    CHECK(std::abs(im) < 1e-10);
  }
  {
    // gamma < omega: conjugate pair, gap 1.25, im = +-sqrt(3)
    const auto [gap, im] = liouvillian_gap(build_liouvillian(two_level_model(2.0, 0.5, 1.0)));
    CHECK(std::abs(gap - 1.25) < 1e-9);
    CHECK(std::abs(std::abs(im) - std::sqrt(3.0)) < 1e-9);
  }
}

TEST_CASE("hermitian_split on explicit matrices") {
  {
    DenseMatrix m = DenseMatrix::Zero(2, 2);
    m(0, 0) = 1.0 / std::sqrt(2.0);
    m(1, 1) = -1.0 / std::sqrt(2.0);
    EigenPair p;
    p.value = Complex(-1, 0);
    p.right = Operator(m);
    const PhaseSplit split = hermitian_split(p);
    CHECK(std::abs(split.plus(0, 0) - Complex(1, 0)) < 1e-13);
    CHECK(std::abs(split.minus(1, 1) - Complex(1, 0)) < 1e-13);
    CHECK(std::abs(split.weight - 1.0 / std::sqrt(2.0)) < 1e-13);
  }
  {
    // the sigma_z-like eigenmatrix of the two-level model: diag(-1, 1)
    DenseMatrix m = DenseMatrix::Zero(2, 2);
    m(0, 0) = -1;
    m(1, 1) = 1;
    EigenPair p;
    p.value = Complex(-2.5, 0);
    p.right = Operator((m / m.norm()).eval());
    const PhaseSplit split = hermitian_split(p);
    CHECK(std::abs(split.plus(1, 1) - Complex(1, 0)) < 1e-13);
    CHECK(std::abs(split.minus(0, 0) - Complex(1, 0)) < 1e-13);
  }
}

TEST_CASE("hermitian_split reconstruction and guards") {
  std::mt19937_64 rng(36);
  for (int rep = 0; rep < 20; ++rep) {
    // random traceless Hermitian unit-norm eigenmatrix stand-in
    Operator h = random_hermitian(5, rng);
    DenseMatrix t = h.dense();
    t -= (t.trace() / 5.0) * DenseMatrix::Identity(5, 5);
    t /= t.norm();
    EigenPair p;
    p.value = Complex(-0.5, 0);
    p.right = Operator(t);
    const PhaseSplit split = hermitian_split(p);
    CHECK(std::abs(split.plus.trace() - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(split.minus.trace() - Complex(1, 0)) < 1e-12);
    // supports are orthogonal
    CHECK(hs_norm(split.plus * split.minus) < 1e-12);
    // reconstruction
    const Operator rep_h = fix_phase_hermitian(p.right);
    const Operator rebuilt = split.weight * (split.plus - split.minus);
    CHECK(hs_norm(rep_h - rebuilt) < 1e-10);
    // positivity
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(split.plus.dense());
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
  }

  EigenPair complex_pair;
  complex_pair.value = Complex(-1, 0.5);
  complex_pair.right = random_density(3, rng);
  CHECK_THROWS_AS(hermitian_split(complex_pair), SplitError);

  EigenPair trace_mode;
  trace_mode.value = Complex(0, 0);
  DenseMatrix rho = random_density(3, rng).dense();
  trace_mode.right = Operator((rho / rho.norm()).eval());
  CHECK_THROWS_AS(hermitian_split(trace_mode), SplitError);
}

TEST_CASE("hermitize combines conjugate pairs") {
  {
    // self-conjugate degenerate case: second output is zero-flagged
    std::mt19937_64 rng(37);
    Operator h = random_hermitian(3, rng);
    DenseMatrix t = h.dense() / h.dense().norm();
    EigenPair p, q;
    p.value = q.value = Complex(-1, 0);
    p.right = q.right = Operator(t);
    const auto [a, b] = hermitize(p, q);
    CHECK(hs_norm(a - p.right) < 1e-12);
    CHECK(hs_norm(b) == 0.0);
  }
  {
    // App. B at gamma < omega: the combinations span the sigma_x/sigma_y
    // plane (the eigenvector's global phase sets the mixture within it)
    const Spectrum s = full_spectrum(build_liouvillian(two_level_model(2.0, 0.5, 1.0)));
    const auto [a, b] = hermitize(s.pairs[1], s.pairs[2]);
    CHECK(a.is_hermitian(1e-13));
    CHECK(b.is_hermitian(1e-13));
    const Operator sx(sigma_x().dense() / std::sqrt(2.0));
    const Operator sy(sigma_y().dense() / std::sqrt(2.0));
    for (const Operator& comb : {a, b}) {
      CHECK(std::abs(hs_inner(comb, Operator::Identity(2))) < 1e-10);
      CHECK(std::abs(hs_inner(comb, sigma_z())) < 1e-10);
      const double in_plane =
          std::norm(hs_inner(sx, comb)) + std::norm(hs_inner(sy, comb));
      CHECK(std::abs(in_plane - 1.0) < 1e-10);  // unit norm, fully in-plane
    }
  }
  {
    std::mt19937_64 rng(38);
    const ModelSpec m = random_model(4, 2, rng);
    const Spectrum s = full_spectrum(build_liouvillian(m));
    for (const auto& p : s.pairs) {
      if (p.value.imag() < 1e-6) continue;
      // find the conjugate partner
      for (const auto& q : s.pairs) {
        if (std::abs(q.value - std::conj(p.value)) > 1e-9) continue;
        const auto [a, b] = hermitize(p, q);
        CHECK(a.is_hermitian(1e-13));
        CHECK(b.is_hermitian(1e-13));
      }
    }
    EigenPair p, q;
    p.value = Complex(-1, 1);
    q.value = Complex(-1, 0.5);  // not a conjugate
    p.right = q.right = random_density(3, rng);
    CHECK_THROWS_AS(hermitize(p, q), PairingError);
  }
}

TEST_CASE("Jordan structure detection") {
  // omega = gamma: lambda_1 = lambda_2 = -1.25 with a single eigenvector
  {
    const SuperMatrix l = build_liouvillian(two_level_model(1.0, 0.5, 1.0));
    const JordanReport rep = detect_jordan(l, Complex(-1.25, 0));
    CHECK(rep.algebraic == 2);
    CHECK(rep.geometric == 1);
  }
  // omega < gamma: four distinct real eigenvalues, diagonalizable
  {
    const SuperMatrix l = build_liouvillian(two_level_model(0.5, 0.5, 1.0));
    const JordanReport rep = detect_jordan(l, Complex(-1.25 + std::sqrt(0.75), 0));
    CHECK(rep.algebraic == 1);
    CHECK(rep.geometric == 1);
  }
  // at lambda_0 = 0 the algebraic multiplicity equals the geometric one
  {
    std::mt19937_64 rng(39);
    for (int rep = 0; rep < 5; ++rep) {
      const ModelSpec m = random_model(3, 2, rng);
      const JordanReport r = detect_jordan(build_liouvillian(m), Complex(0, 0));
      CHECK(r.algebraic == r.geometric);
    }
  }
}
