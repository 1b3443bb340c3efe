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

#include "lspec/dynamics.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "lspec/models.hpp"

namespace lspec {

namespace {

// one Arnoldi-projected step w <- e^{tau L} w with a residual-based local
// error estimate; halves tau until the estimate meets tol
Operator krylov_expm(const SuperMatrix& l, const Operator& rho0, double t,
                     const ExpmOptions& opts) {
  const Eigen::Index n = l.size();
  DenseVector w = vectorize(rho0);
  double remaining = t;
  const int m = static_cast<int>(std::min<Eigen::Index>(opts.krylov_dim, n));
  double tau = remaining;

  while (remaining > 0) {
    const double beta = w.norm();
    if (beta == 0.0) break;
    DenseMatrix v(n, m + 1);
    DenseMatrix h = DenseMatrix::Zero(m + 1, m);
    v.col(0) = w / beta;
    int built = m;
    bool breakdown = false;
    for (int j = 0; j < m; ++j) {
      DenseVector f = l.apply_vec(v.col(j));
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const Complex c = v.col(i).dot(f);
          h(i, j) += c;
          f -= c * v.col(i);
        }
      const double nf = f.norm();
      h(j + 1, j) = nf;
      if (nf < 1e-14) {
        built = j + 1;
        breakdown = true;
        break;
      }
      v.col(j + 1) = f / nf;
    }

    const DenseMatrix hm = h.topLeftCorner(built, built);
    for (int halving = 0;; ++halving) {
      const DenseMatrix e = (tau * hm).exp();
      const double err =
          breakdown ? 0.0 : beta * std::abs(h(built, built - 1)) * std::abs(e(built - 1, 0)) * tau;
      if (err <= opts.tol * std::max(1.0, beta) || halving >= 60) {
        w = v.leftCols(built) * (beta * e.col(0));
        remaining -= tau;
        tau = std::min(remaining, tau * 2.0);
        break;
      }
      tau /= 2.0;
    }
  }
  return unvectorize(w, l.op_dim());
}

}  // namespace

Operator evolve_expm(const SuperMatrix& l, const Operator& rho0, double t,
                     const ExpmOptions& opts) {
  if (rho0.dim() != l.op_dim()) throw ShapeError("evolve_expm: dimension mismatch");
  if (t < 0) throw ParameterError("evolve_expm: t must be >= 0 (the map is not reversible)");
  if (t == 0) return rho0;

  if (!opts.force_krylov && l.has_matrix() && l.size() <= opts.dense_limit) {
    DenseMatrix prop = (t * DenseMatrix(l.matrix())).exp();
    return unvectorize(prop * vectorize(rho0), l.op_dim());
  }
  return krylov_expm(l, rho0, t, opts);
}

std::vector<Complex> decompose_state(const Operator& rho0, const Spectrum& spec) {
  const Eigen::Index d = rho0.dim();
  if (static_cast<Eigen::Index>(spec.pairs.size()) != d * d)
    throw ParameterError("decompose_state: needs the complete D^2 spectrum");
  std::vector<Complex> coeffs(spec.pairs.size());
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const auto& p = spec.pairs[i];
    if (!p.left) throw ParameterError("decompose_state: left eigenmatrices unavailable");
    // a blown-up dual norm signals a (near-)defective eigenbasis
    if (hs_norm(*p.left) > 1e12)
      throw ConvergenceError(
          "decompose_state: decomposition unavailable, eigenbasis is near-defective "
          "(see detect_jordan)");
    coeffs[i] = hs_inner(*p.left, rho0);
  }
  // reconstruction residual is the honest gate against silent Jordan cases
  DenseMatrix acc = DenseMatrix::Zero(d, d);
  for (std::size_t i = 0; i < spec.pairs.size(); ++i)
    acc += coeffs[i] * spec.pairs[i].right.dense();
  const double res = (acc - rho0.dense()).norm();
  if (res > 1e-9 * std::max(1.0, hs_norm(rho0)))
    throw ConvergenceError("decompose_state: reconstruction residual " + std::to_string(res) +
                           "; spectrum is incomplete or Jordan-degenerate (see detect_jordan)");
  return coeffs;
}

Operator propagate_spectral(const std::vector<Complex>& coeffs, const Spectrum& spec, double t) {
  if (coeffs.size() != spec.pairs.size())
    throw ShapeError("propagate_spectral: coefficient count mismatch");
  if (spec.pairs.empty()) throw ParameterError("propagate_spectral: empty spectrum");
  const int d = spec.pairs.front().right.dim();
  DenseMatrix acc = DenseMatrix::Zero(d, d);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    acc += coeffs[i] * std::exp(spec.pairs[i].value * t) * spec.pairs[i].right.dense();
  return Operator(std::move(acc));
}

JordanDecayResult jordan_decay_check(double omega, double epsilon, double gamma, Complex b,
                                     const std::vector<double>& times) {
  if (std::abs(omega - gamma) > 1e-12 * std::max(1.0, gamma))
    throw ParameterError("jordan_decay_check: omega != gamma is not the Jordan point");
  if (std::abs(b) > 0.5 + 1e-12)
    throw ParameterError("jordan_decay_check: |b| > 1/2 is not a physical coherence here");

  const ModelSpec m = two_level_model(omega, epsilon, gamma);
  const SuperMatrix l = build_liouvillian(m);
  DenseMatrix rho0(2, 2);
  rho0 << 0.5, b, std::conj(b), 0.5;

  const double decay = gamma + epsilon / 2.0;  // |Re lambda_1| at the Jordan point
  const double drive = omega * (b.real() + b.imag());

  JordanDecayResult out;
  out.times = times;
  double peak_x = 0, peak_y = 0;
  for (double t : times) {
    const Operator rt = evolve_expm(l, Operator(rho0), t);
    const double sx = (sigma_x().dense() * rt.dense()).trace().real();
    const double sy = (sigma_y().dense() * rt.dense()).trace().real();
    const double cx = 2.0 * std::exp(-decay * t) * (t * drive + b.real());
    const double cy = 2.0 * std::exp(-decay * t) * (t * drive - b.imag());
    out.sx_numeric.push_back(sx);
    out.sy_numeric.push_back(sy);
    out.sx_closed.push_back(cx);
    out.sy_closed.push_back(cy);
    peak_x = std::max(peak_x, std::abs(cx));
    peak_y = std::max(peak_y, std::abs(cy));
  }
  // relative error with a small-amplitude floor so that zero crossings of
  // the closed form do not divide by zero
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double dx = std::abs(out.sx_numeric[i] - out.sx_closed[i]);
    const double dy = std::abs(out.sy_numeric[i] - out.sy_closed[i]);
    out.max_rel_error_x =
        std::max(out.max_rel_error_x, dx / (std::abs(out.sx_closed[i]) + 1e-6 * peak_x));
    out.max_rel_error_y =
        std::max(out.max_rel_error_y, dy / (std::abs(out.sy_closed[i]) + 1e-6 * peak_y));
  }
  return out;
}

}  // namespace lspec
