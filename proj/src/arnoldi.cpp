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

#include "arnoldi.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "lspec/errors.hpp"

namespace lspec::detail {

namespace {

DenseVector random_unit_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  DenseVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  v.normalize();
  return v;
}

}  // namespace

// Shift-invert Arnoldi with explicit locking and shift escalation.
//
// Eigenpairs of B = (A - sigma I)^{-1} are extracted in dominance order;
// each converged pair is locked into an orthonormal deflation basis X (with
// B X = X R) and the iteration restarts on the orthogonal complement.
//
// Two problems specific to solving at a (near-)singular sigma — the
// steady-state and slow-mode setting — are handled explicitly:
//  * a candidate whose Krylov data is polluted by the enormous dominant
//    direction gets an inverse-iteration polish at its own Ritz value;
//  * when the complement iteration stagnates because ||B|| dwarfs every
//    remaining eigenvalue of interest (eps * mu_0 noise drowns the basis),
//    the solver re-factorizes at a slightly displaced off-axis shift and
//    continues with the basis locked so far.
ArnoldiEigs shift_invert_eigs(const SpMat& a, int k, Complex shift, double norm1,
                              const ArnoldiOptions& opts) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ShapeError("shift_invert_eigs: matrix must be square");
  if (k < 1) throw ParameterError("shift_invert_eigs: k must be >= 1");
  if (k > n) throw ParameterError("shift_invert_eigs: k exceeds matrix dimension");

  SpMat id(n, n);
  id.setIdentity();
  const double scale = std::max(norm1, 1.0);
  const double tol_abs = opts.rel_tol * scale;
  const double delta0 = 1e-10 * scale;
  const int mmax = static_cast<int>(std::min<Eigen::Index>(opts.max_subspace, n));
  std::mt19937_64 rng(opts.seed);

  // shift ladder: the nominal shift, then off-axis displacements
  const Complex away = Complex(-0.6, 0.8);
  const std::vector<Complex> stage_shifts = {
      shift, shift + 1e-7 * scale * away, shift + 1e-5 * scale * away,
      shift + 1e-3 * scale * away, shift + 1e-2 * scale * away};

  Eigen::SparseLU<SpMat> lu;
  Complex sigma = shift;
  auto factorize = [&](Complex target) {
    sigma = target;
    for (int attempt = 0;; ++attempt) {
      SpMat shifted = a - sigma * id;
      shifted.makeCompressed();
      lu.compute(shifted);
      if (lu.info() == Eigen::Success) return;
      if (attempt >= 3)
        throw ConvergenceError(
            "shift_invert_eigs: factorization failed after shift perturbations");
      sigma = target + delta0 * std::pow(10.0, attempt) * away;
    }
  };

  DenseMatrix locked_x(n, k);  // orthonormal deflation basis
  DenseMatrix locked_r(k, k);  // B X = X R at the current shift
  locked_r.setZero();
  std::vector<Complex> out_values;
  DenseMatrix out_vectors(n, k);
  std::vector<double> out_residuals;
  int locked = 0;

  auto deflate = [&](DenseVector& w) {
    if (locked == 0) return;
    for (int pass = 0; pass < 2; ++pass)
      w -= locked_x.leftCols(locked) * (locked_x.leftCols(locked).adjoint() * w);
  };

  auto rebuild_locked_r = [&]() {
    for (int i = 0; i < locked; ++i) {
      const DenseVector bx = lu.solve(locked_x.col(i));
      locked_r.col(i).head(locked) = locked_x.leftCols(locked).adjoint() * bx;
    }
  };

  // inverse-iteration polish at the candidate's own Ritz value
  auto polish = [&](Complex& lambda, DenseVector& x, double& res) {
    for (int attempt = 0; attempt < 2 && res > tol_abs; ++attempt) {
      Eigen::SparseLU<SpMat> lup;
      SpMat shifted = a - (lambda + delta0 * std::pow(10.0, attempt) * away) * id;
      shifted.makeCompressed();
      lup.compute(shifted);
      if (lup.info() != Eigen::Success) continue;
      for (int step = 0; step < 3 && res > tol_abs; ++step) {
        DenseVector y = lup.solve(x);
        const double yn = y.norm();
        if (!(yn > 0) || !y.allFinite()) break;
        x = y / yn;
        lambda = x.dot(DenseVector(a * x));  // Rayleigh quotient
        res = (a * x - lambda * x).norm();
      }
    }
  };

  for (std::size_t stage = 0; stage < stage_shifts.size() && locked < k; ++stage) {
    factorize(stage_shifts[stage]);
    rebuild_locked_r();

    bool stage_progress = true;
    while (stage_progress && locked < k) {
      stage_progress = false;

      DenseMatrix v(n, mmax + 1);
      DenseMatrix hess = DenseMatrix::Zero(mmax + 1, mmax);
      {
        DenseVector v0 = random_unit_vector(n, rng);
        deflate(v0);
        if (v0.norm() < 1e-8) v0 = random_unit_vector(n, rng);
        v.col(0) = v0.normalized();
      }

      int m = 0;
      int chunk = opts.chunk;
      while (m < mmax && locked < k) {
        const int target = std::min(m + chunk, mmax);
        chunk = std::min(2 * chunk, 4 * opts.chunk);  // extractions get pricier with m
        for (int j = m; j < target; ++j) {
          DenseVector w = lu.solve(v.col(j));
          deflate(w);
          for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= j; ++i) {
              const Complex c = v.col(i).dot(w);
              hess(i, j) += c;
              w -= c * v.col(i);
            }
          const double beta = w.norm();
          if (beta < 1e-14 * std::max(1.0, hess.col(j).head(j + 1).cwiseAbs().maxCoeff())) {
            // invariant subspace of the deflated operator
            hess(j + 1, j) = 0.0;
            DenseVector f = random_unit_vector(n, rng);
            deflate(f);
            for (int i = 0; i <= j; ++i) f -= v.col(i).dot(f) * v.col(i);
            const double fn = f.norm();
            if (fn < 1e-8) {
              m = j + 1;
              break;
            }
            v.col(j + 1) = f / fn;
          } else {
            hess(j + 1, j) = beta;
            v.col(j + 1) = w / beta;
          }
          m = j + 1;
        }
        if (m < 1) break;

        Eigen::ComplexEigenSolver<DenseMatrix> es(hess.topLeftCorner(m, m));
        if (es.info() != Eigen::Success)
          throw ConvergenceError("shift_invert_eigs: Ritz solve failed");
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
          return std::abs(es.eigenvalues()(x)) > std::abs(es.eigenvalues()(y));
        });

        // lock candidates in dominance order until the first unconverged one
        bool locked_here = false;
        for (int rank = 0; rank < m && locked < k; ++rank) {
          const int idx = order[rank];
          const Complex mu = es.eigenvalues()(idx);
          DenseVector u = v.leftCols(m) * es.eigenvectors().col(idx);
          u.normalize();

          // fold the locked components back in: t = (mu I - R)^{-1} X^dag B u
          DenseVector xfull = u;
          if (locked > 0) {
            DenseVector bu = lu.solve(u);
            DenseVector rhs = locked_x.leftCols(locked).adjoint() * bu;
            DenseMatrix small = mu * DenseMatrix::Identity(locked, locked) -
                                locked_r.topLeftCorner(locked, locked);
            DenseVector t = small.fullPivLu().solve(rhs);
            if (t.allFinite() && t.norm() < 1e8)
              xfull = (u + locked_x.leftCols(locked) * t).normalized();
            // near-singular fold-in: degenerate with a locked value; u alone
            // is the candidate
          }

          Complex lambda = sigma + (mu == Complex(0, 0) ? Complex(0, 0) : 1.0 / mu);
          double res = (a * xfull - lambda * xfull).norm();
          // polish once the Ritz value has a few digits; dedup below keeps a
          // drifted polish from re-locking a known pair
          if (res > tol_abs && res < 1e-3 * std::max(norm1, 1.0)) polish(lambda, xfull, res);
          if (res > tol_abs) break;

          DenseVector q = xfull;
          deflate(q);
          const double qn = q.norm();
          if (qn < 1e-8) continue;  // already represented in the locked basis
          q /= qn;
          const DenseVector bq = lu.solve(q);
          locked_r.col(locked).head(locked) = locked_x.leftCols(locked).adjoint() * bq;
          locked_r(locked, locked) = q.dot(bq);
          locked_x.col(locked) = q;
          out_values.push_back(lambda);
          out_vectors.col(locked) = xfull;
          out_residuals.push_back(res);
          ++locked;
          locked_here = true;
          stage_progress = true;
        }
        if (locked_here) break;  // restart on the enlarged complement
      }
    }
  }

  if (locked < k) {
    std::ostringstream diag;
    diag << "shift_invert_eigs: only " << locked << "/" << k << " pairs converged (n=" << n
         << ", shift=" << shift << ", " << stage_shifts.size()
         << " shift stages, subspace " << mmax << ", tol " << tol_abs << ")";
    throw ConvergenceError(diag.str());
  }

  ArnoldiEigs out;
  out.values = std::move(out_values);
  out.vectors = out_vectors.leftCols(locked);
  out.residuals = std::move(out_residuals);
  out.subspace_used = mmax;
  return out;
}

}  // namespace lspec::detail
