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

#include "lspec/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace lspec {

namespace {

// eigendecomposition with the density-matrix clipping rules
Eigen::SelfAdjointEigenSolver<DenseMatrix> density_eig(const Operator& rho, const char* who) {
  const double scale = std::max(hs_norm(rho), 1e-300);
  if (!rho.is_hermitian(1e-8 * scale))
    throw StateError(std::string(who) + ": input is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-6 || std::abs(rho.trace().imag()) > 1e-8)
    throw StateError(std::string(who) + ": input trace is not 1");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es((rho.dense() + rho.dense().adjoint()) / 2.0);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw StateError(std::string(who) + ": negative eigenvalue " +
                     std::to_string(es.eigenvalues().minCoeff()) + " beyond the clip floor");
  return es;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LSPEC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace

double expectation(const Operator& rho, const Operator& obs) {
  if (rho.dim() != obs.dim()) throw ShapeError("expectation: dimension mismatch");
  const double oscale = std::max(hs_norm(obs), 1e-300);
  if (!obs.is_hermitian(1e-10 * oscale))
    throw ParameterError("expectation: observable is not Hermitian");
  const Complex val = (rho.dense() * obs.dense()).trace();
  const double scale = std::max(1.0, hs_norm(rho) * hs_norm(obs));
  if (std::abs(val.imag()) > 1e-10 * scale)
    throw StateError("expectation: imaginary residue " + std::to_string(val.imag()));
  return val.real();
}

double fidelity(const Operator& rho, const Operator& xi) {
  if (rho.dim() != xi.dim()) throw ShapeError("fidelity: dimension mismatch");
  auto era = density_eig(rho, "fidelity");
  Eigen::VectorXd ev = era.eigenvalues().cwiseMax(0.0);
  DenseMatrix sqrt_rho =
      era.eigenvectors() * ev.cwiseSqrt().asDiagonal() * era.eigenvectors().adjoint();
  auto exi = density_eig(xi, "fidelity");
  DenseMatrix xic = exi.eigenvectors() * exi.eigenvalues().cwiseMax(0.0).asDiagonal() *
                    exi.eigenvectors().adjoint();
  DenseMatrix inner = sqrt_rho * xic * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> em((inner + inner.adjoint()) / 2.0);
  double f = em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(f, 0.0, 1.0);
}

double trace_distance(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw ShapeError("trace_distance: dimension mismatch");
  DenseMatrix d = a.dense() - b.dense();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es((d + d.adjoint()) / 2.0);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::vector<ScanRecord> scan(const ModelFamily& family, const std::vector<double>& zeta_grid,
                             double big_n, int k, const ScanOptions& opts) {
  for (std::size_t i = 1; i < zeta_grid.size(); ++i)
    if (!(zeta_grid[i] > zeta_grid[i - 1]))
      throw ParameterError("scan: grid must be sorted strictly ascending");

  std::vector<ScanRecord> records(zeta_grid.size());

  auto run_point = [&](std::size_t idx) {
    ScanRecord rec;
    rec.zeta = zeta_grid[idx];
    rec.big_n = big_n;
    try {
      int cutoff = opts.cutoff > 0 ? opts.cutoff : default_cutoff(big_n);
      SolverOptions sopts = opts.solver;
      sopts.k = std::max(k, 2);

      // one shift-invert solve per point serves both the steady state (the
      // zero mode) and the slow spectrum
      Operator rho_ss;
      Spectrum spec;
      ModelSpec model;
      std::size_t i0 = 0;
      for (int attempt = 0;; ++attempt) {
        model = family(rec.zeta, big_n, cutoff);
        const SuperMatrix liou = build_liouvillian(model);
        spec = leading_spectrum(liou, sopts.k, Complex(0, 0), sopts);
        i0 = spec.trace_mode_index();
        rho_ss = normalize_steady_density(spec.pairs[i0].right, sopts.psd_floor);
        rec.cutoff_used = model.dim;
        const int d = model.dim;
        if (d <= 4) break;
        // cutoff audit: the steady state may not touch the last Fock levels
        const double tail = rho_ss(d - 1, d - 1).real() + rho_ss(d - 2, d - 2).real();
        if (tail < opts.tail_tol) break;
        if (attempt >= opts.max_cutoff_retries)
          throw ConvergenceError("scan: cutoff " + std::to_string(cutoff) +
                                 " still leaves tail population " + std::to_string(tail));
        cutoff = static_cast<int>(std::ceil(1.5 * cutoff));
      }

      // lambda_1 = slowest mode other than rho_0 (near criticality the
      // traceless mode can sort ahead of the exact zero)
      const std::size_t i1 = i0 == 0 ? 1 : 0;
      rec.gap = std::abs(spec.pairs[i1].value.real());
      rec.im_lambda1 = spec.pairs[i1].value.imag();

      const double gamma = model.param("gamma", 1.0);
      const Operator n_op = number_op(model.dim);
      rec.density = expectation(rho_ss, n_op) / big_n;

      if (std::abs(rec.im_lambda1) <= opts.im_tol_factor * gamma) {
        PhaseSplit split =
            hermitian_split(spec.pairs[i1], std::max(opts.im_tol_factor * gamma, 1e-8));
        // the split's sign is arbitrary; orient it so that "plus" is the
        // higher-density branch (the post-transition phase in these models)
        if (expectation(split.plus, n_op) < expectation(split.minus, n_op))
          std::swap(split.plus, split.minus);
        const Operator xi((split.plus.dense() + split.minus.dense()) / 2.0);
        rec.fid_xi = fidelity(rho_ss, xi);
        rec.fid_plus = fidelity(rho_ss, split.plus);
        rec.fid_minus = fidelity(rho_ss, split.minus);
      }
    } catch (const Error& e) {
      rec.status = e.what();
    }
    records[idx] = std::move(rec);
  };

  const int nthreads =
      std::min<int>(resolve_threads(opts.threads), static_cast<int>(zeta_grid.size()));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < zeta_grid.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < zeta_grid.size(); i = next.fetch_add(1))
          run_point(i);
      });
    for (auto& th : pool) th.join();
  }
  return records;
}

double bifurcation_point(const std::vector<ScanRecord>& records,
                         const std::function<double(double)>& im_lambda1_at, double im_tol,
                         double rel_tol) {
  if (!(im_tol > 0)) throw ParameterError("bifurcation_point: im_tol must be positive");
  // valid points only; classify as "real" when |Im lambda_1| < im_tol
  std::vector<std::pair<double, bool>> pts;
  for (const auto& r : records)
    if (r.status == "ok" && std::isfinite(r.im_lambda1))
      pts.emplace_back(r.zeta, std::abs(r.im_lambda1) < im_tol);
  if (pts.size() < 3)
    throw AnalysisError("bifurcation_point: fewer than 3 usable scan points");

  std::ptrdiff_t flip = -1;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].second == pts[i - 1].second) continue;
    // the new regime must persist for the next two usable points
    bool persists = true;
    for (std::size_t j = i + 1; j < std::min(pts.size(), i + 3); ++j)
      if (pts[j].second != pts[i].second) persists = false;
    if (persists) {
      flip = static_cast<std::ptrdiff_t>(i);
      break;
    }
  }
  if (flip < 0) {
    std::ostringstream os;
    os << "bifurcation_point: no persistent |Im lambda_1| crossing in range (";
    int nreal = 0;
    for (auto& p : pts) nreal += p.second ? 1 : 0;
    os << nreal << "/" << pts.size() << " points classified real, im_tol=" << im_tol << ")";
    throw AnalysisError(os.str());
  }

  double lo = pts[flip - 1].first, hi = pts[flip].first;
  const bool lo_real = pts[flip - 1].second;
  while ((hi - lo) > rel_tol * std::max({std::abs(hi), std::abs(lo), 1e-12})) {
    const double mid = 0.5 * (lo + hi);
    const bool mid_real = std::abs(im_lambda1_at(mid)) < im_tol;
    if (mid_real == lo_real)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double bifurcation_point_tracked(const std::vector<double>& grid,
                                 const std::function<std::vector<Complex>(double)>& modes_at,
                                 double im_tol, double rel_tol) {
  if (grid.size() < 3) throw AnalysisError("bifurcation_point_tracked: need >= 3 grid points");
  if (!(im_tol > 0)) throw ParameterError("bifurcation_point_tracked: im_tol must be positive");

  auto nearest = [](const std::vector<Complex>& modes, Complex ref) {
    Complex best = modes.front();
    for (const Complex& v : modes)
      if (std::abs(v - ref) < std::abs(best - ref)) best = v;
    return best;
  };

  // seed the track: slowest complex mode (positive-Im member) at the left edge
  std::vector<Complex> first = modes_at(grid.front());
  Complex track(0, 0);
  bool seeded = false;
  for (const Complex& v : first) {
    if (v.imag() <= im_tol) continue;
    if (!seeded || std::abs(v.real()) < std::abs(track.real())) {
      track = v;
      seeded = true;
    }
  }
  if (!seeded)
    throw AnalysisError(
        "bifurcation_point_tracked: leftmost grid point is outside the complex window");

  std::ptrdiff_t flip = -1;
  std::vector<Complex> history{track};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    track = nearest(modes_at(grid[i]), track);
    history.push_back(track);
    if (std::abs(track.imag()) < im_tol) {
      // the merge must persist: continue the track for two more points
      bool persists = true;
      Complex fwd = track;
      for (std::size_t j = i + 1; j < std::min(grid.size(), i + 3); ++j) {
        fwd = nearest(modes_at(grid[j]), fwd);
        if (std::abs(fwd.imag()) >= im_tol) persists = false;
      }
      if (persists) {
        flip = static_cast<std::ptrdiff_t>(i);
        break;
      }
    }
  }
  if (flip < 0)
    throw AnalysisError("bifurcation_point_tracked: the tracked pair never becomes real in range");

  double lo = grid[flip - 1], hi = grid[flip];
  Complex lo_state = history[flip - 1];
  while ((hi - lo) > rel_tol * std::max({std::abs(hi), std::abs(lo), 1e-12})) {
    const double mid = 0.5 * (lo + hi);
    const Complex tr = nearest(modes_at(mid), lo_state);
    if (std::abs(tr.imag()) >= im_tol) {
      lo = mid;
      lo_state = tr;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PowerLawFit power_law_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4)
    throw ParameterError("power_law_fit: need at least 4 (N, G_B) points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].first > points[i - 1].first))
      throw ParameterError("power_law_fit: N must be strictly increasing");

  const std::size_t n = points.size();
  double gb_min = points[0].second, gb_max = points[0].second;
  for (const auto& p : points) {
    gb_min = std::min(gb_min, p.second);
    gb_max = std::max(gb_max, p.second);
  }
  const double spread = std::max(gb_max - gb_min, 1e-12 * std::max(std::abs(gb_max), 1.0));

  // linear fit of log(G_B - G_c) on log N at fixed G_c; returns SSE
  auto fit_at = [&](double gc, double* intercept, double* slope) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : points) {
      const double arg = p.second - gc;
      if (arg <= 0) return std::numeric_limits<double>::infinity();
      const double x = std::log(p.first), y = std::log(arg);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    const double b = (n * sxy - sx * sy) / det;
    const double a = (sy - b * sx) / n;
    double sse = 0;
    for (const auto& p : points) {
      const double r = std::log(p.second - gc) - (a + b * std::log(p.first));
      sse += r * r;
    }
    if (intercept) *intercept = a;
    if (slope) *slope = b;
    return sse;
  };

  // Outer search over G_c = gb_min - exp(s): coarse grid, then golden
  // section. Only strict interior local minima are admissible; the log-space
  // objective always has a spurious vanishing tail at G_c -> -infinity
  // (the model flattens and any line fits), which lives at the boundary.
  const double s_lo = std::log(1e-9 * spread), s_hi = std::log(1e3 * spread);
  const int coarse = 400;
  std::vector<double> sse_grid(coarse + 1);
  for (int i = 0; i <= coarse; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / coarse;
    sse_grid[i] = fit_at(gb_min - std::exp(s), nullptr, nullptr);
  }
  double best_s = 0, best_sse = std::numeric_limits<double>::infinity();
  for (int i = 1; i < coarse; ++i) {
    if (!std::isfinite(sse_grid[i])) continue;
    if (sse_grid[i] <= sse_grid[i - 1] && sse_grid[i] <= sse_grid[i + 1] &&
        sse_grid[i] < best_sse) {
      best_sse = sse_grid[i];
      best_s = s_lo + (s_hi - s_lo) * i / coarse;
    }
  }
  if (!std::isfinite(best_sse)) {
    std::ostringstream os;
    os << "power_law_fit: no interior optimum of the log-misfit over G_c in (" << gb_min - 1e3 * spread
       << ", " << gb_min << "); grid of " << coarse + 1 << " candidates, min(G_B) = " << gb_min;
    throw AnalysisError(os.str());
  }
  const double step = (s_hi - s_lo) / coarse;
  double a = best_s - step, b = best_s + step;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = fit_at(gb_min - std::exp(c1), nullptr, nullptr);
  double f2 = fit_at(gb_min - std::exp(c2), nullptr, nullptr);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = fit_at(gb_min - std::exp(c1), nullptr, nullptr);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = fit_at(gb_min - std::exp(c2), nullptr, nullptr);
    }
  }
  const double s_opt = 0.5 * (a + b);
  const double gc = gb_min - std::exp(s_opt);
  double intercept = 0, slope = 0;
  const double sse = fit_at(gc, &intercept, &slope);
  if (!std::isfinite(sse))
    throw AnalysisError("power_law_fit: optimizer left the admissible region");

  PowerLawFit out;
  out.critical_value = gc;
  out.amplitude = std::exp(intercept);
  out.exponent = -slope;
  out.residual = std::sqrt(sse / n);

  // parameter variances: linear-fit covariance at fixed G_c, plus a
  // curvature estimate for G_c itself
  const double dof = std::max<double>(1.0, static_cast<double>(n) - 3.0);
  const double sigma2 = sse / dof;
  double sx = 0, sxx = 0;
  for (const auto& p : points) {
    sx += std::log(p.first);
    sxx += std::log(p.first) * std::log(p.first);
  }
  const double det = n * sxx - sx * sx;
  out.variance[0] = sigma2 * sxx / det;  // var(log A)
  out.variance[1] = sigma2 * n / det;    // var(exponent)
  const double h = std::max(1e-6 * spread, 1e-9);
  const double fp = fit_at(gc + h, nullptr, nullptr);
  const double fm = fit_at(gc - h, nullptr, nullptr);
  const double curv = (fp + fm - 2 * sse) / (h * h);
  out.variance[2] = (std::isfinite(curv) && curv > 0) ? 2.0 * sigma2 / curv : 0.0;
  return out;
}

}  // namespace lspec
