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

#include "lspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "arnoldi.hpp"

namespace lspec {

namespace {

struct Key {
  double abs_re, im, mod;
};

Key sort_key(const Complex& z) { return {std::abs(z.real()), z.imag(), std::abs(z)}; }

void sort_pairs(std::vector<EigenPair>& pairs) {
  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    return spectral_order(a.value, b.value);
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].index = static_cast<int>(i);
}

double residual_of(const SuperMatrix& l, const DenseVector& x, Complex lambda) {
  return (l.apply_vec(x) - lambda * x).norm();
}

}  // namespace

bool spectral_order(const Complex& a, const Complex& b) {
  const Key ka = sort_key(a), kb = sort_key(b);
  if (ka.abs_re != kb.abs_re) return ka.abs_re < kb.abs_re;
  if (ka.im != kb.im) return ka.im < kb.im;
  return ka.mod < kb.mod;
}

double Spectrum::gap() const {
  if (pairs.size() < 2) throw ParameterError("Spectrum::gap needs at least two eigenpairs");
  return std::abs(pairs[1].value.real());
}

double Spectrum::im_lambda1() const {
  if (pairs.size() < 2) throw ParameterError("Spectrum::im_lambda1 needs at least two eigenpairs");
  return pairs[1].value.imag();
}

const EigenPair& Spectrum::zero_mode() const {
  if (pairs.empty() || std::abs(pairs[0].value) > zero_tol)
    throw ConvergenceError("Spectrum: no zero mode within zero_tol");
  return pairs[0];
}

std::size_t Spectrum::trace_mode_index(double trace_floor) const {
  std::vector<std::size_t> carriers;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (std::abs(pairs[i].value) > zero_tol) continue;
    if (std::abs(pairs[i].right.trace()) > trace_floor) carriers.push_back(i);
  }
  if (carriers.size() == 1) return carriers.front();
  if (carriers.empty())
    throw ConvergenceError("Spectrum: no trace-carrying zero mode within zero_tol");
  std::vector<Operator> kernel;
  for (std::size_t i : carriers) kernel.push_back(pairs[i].right);
  throw DegenerateKernelError("Spectrum: " + std::to_string(carriers.size()) +
                                  " trace-carrying zero modes; the kernel is degenerate",
                              std::move(kernel));
}

Spectrum full_spectrum(const SuperMatrix& l, const SolverOptions& opts) {
  const Eigen::Index n = l.size();
  if (n > opts.dense_limit)
    throw DimensionError("full_spectrum: D^2 = " + std::to_string(n) +
                         " exceeds the dense limit; use leading_spectrum");
  const DenseMatrix dense = DenseMatrix(l.matrix());
  Eigen::ComplexEigenSolver<DenseMatrix> es(dense, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) throw ConvergenceError("full_spectrum: dense solver failed");

  DenseMatrix vinv;
  if (opts.compute_left) vinv = es.eigenvectors().inverse();

  Spectrum s;
  s.norm1 = l.norm1();
  s.zero_tol = opts.zero_tol_factor * s.norm1;
  s.pairs.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    EigenPair p;
    p.value = es.eigenvalues()(i);
    DenseVector x = es.eigenvectors().col(i);
    x.normalize();
    p.right = unvectorize(x, l.op_dim());
    p.residual = residual_of(l, x, p.value);
    if (opts.compute_left) {
      // rows of V^{-1} are the biorthonormal duals: <left_i, right_j> = d_ij
      DenseVector y = vinv.row(i).adjoint();
      p.left = unvectorize(y, l.op_dim());
    }
    s.pairs.push_back(std::move(p));
  }
  sort_pairs(s.pairs);
  return s;
}

Spectrum leading_spectrum(const SuperMatrix& l, int k, Complex shift,
                          const SolverOptions& opts) {
  if (k < 2) throw ParameterError("leading_spectrum: k must be >= 2");
  const Eigen::Index n = l.size();
  if (k > n) k = static_cast<int>(n);

  detail::ArnoldiOptions aopts;
  aopts.rel_tol = opts.residual_factor;
  aopts.max_subspace = opts.max_subspace;
  aopts.seed = opts.seed;
  const double norm1 = l.norm1();
  detail::ArnoldiEigs eigs = detail::shift_invert_eigs(l.matrix(), k, shift, norm1, aopts);

  Spectrum s;
  s.norm1 = norm1;
  s.zero_tol = opts.zero_tol_factor * norm1;
  for (std::size_t i = 0; i < eigs.values.size(); ++i) {
    EigenPair p;
    p.value = eigs.values[i];
    p.right = unvectorize(eigs.vectors.col(static_cast<Eigen::Index>(i)), l.op_dim());
    p.residual = eigs.residuals[i];
    s.pairs.push_back(std::move(p));
  }
  if (opts.compute_left) {
    // left eigenmatrices from the adjoint supermatrix eigenproblem
    SpMat adj = l.matrix().adjoint();
    detail::ArnoldiEigs lefts =
        detail::shift_invert_eigs(adj, k, std::conj(shift), norm1, aopts);
    for (auto& p : s.pairs) {
      for (std::size_t j = 0; j < lefts.values.size(); ++j) {
        if (std::abs(std::conj(lefts.values[j]) - p.value) <=
            1e-6 * std::max(1.0, std::abs(p.value))) {
          DenseVector y = lefts.vectors.col(static_cast<Eigen::Index>(j));
          const Complex d = y.dot(vectorize(p.right));
          if (std::abs(d) > 1e-12) {
            y /= std::conj(d);
            p.left = unvectorize(y, l.op_dim());
          }
          break;
        }
      }
    }
  }
  sort_pairs(s.pairs);
  return s;
}

Operator steady_state(const SuperMatrix& l, const SolverOptions& opts) {
  SolverOptions o = opts;
  o.k = std::max(2, opts.k);
  Spectrum s = leading_spectrum(l, o.k, Complex(0, 0), o);

  std::vector<const EigenPair*> kernel;
  for (const auto& p : s.pairs)
    if (std::abs(p.value) <= s.zero_tol) kernel.push_back(&p);
  if (kernel.empty())
    throw ConvergenceError("steady_state: no eigenvalue within zero_tol of 0");
  if (kernel.size() > 1) {
    std::vector<Operator> basis;
    for (const auto* p : kernel) basis.push_back(p->right);
    throw DegenerateKernelError(
        "steady_state: " + std::to_string(kernel.size()) +
            " numerical zero modes; decompose by symmetry sector instead",
        std::move(basis));
  }

  Operator out = normalize_steady_density(kernel.front()->right, opts.psd_floor);
  const double res = hs_norm(l.apply(out));
  if (res > 1e-10 * std::max(s.norm1, 1.0))
    throw ConvergenceError("steady_state: residual ||L rho|| = " + std::to_string(res) +
                           " too large");
  return out;
}

Operator normalize_steady_density(const Operator& raw, double psd_floor) {
  Operator herm = fix_phase_hermitian(raw);
  // phase-invariant Hermiticity measure: raw is e^{i phi} herm up to noise
  const double hdev = 1.0 - std::min(1.0, std::abs(hs_inner(herm, raw)) / hs_norm(raw));
  if (hdev > 1e-6)
    throw ConvergenceError("steady state: zero mode not Hermitian (deviation " +
                           std::to_string(hdev) + ")");

  const double tr = herm.trace().real();
  if (std::abs(tr) < 1e-12)
    throw ConvergenceError("steady state: zero mode is traceless; kernel is suspect");
  DenseMatrix rho = herm.dense() / tr;

  // PSD clipping at the floor; harder negativity is a real failure
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -psd_floor)
    throw StateError("steady state: eigenvalue " + std::to_string(ev.minCoeff()) +
                     " below the PSD clipping floor");
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
  rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  rho /= rho.trace().real();
  return Operator(((rho + rho.adjoint()) / 2.0).eval());
}

std::pair<double, double> liouvillian_gap(const Spectrum& s) {
  return {s.gap(), s.im_lambda1()};
}

std::pair<double, double> liouvillian_gap(const SuperMatrix& l, const SolverOptions& opts) {
  SolverOptions o = opts;
  o.k = std::max(2, opts.k);
  return liouvillian_gap(leading_spectrum(l, o.k, o.shift, o));
}

Operator fix_phase_hermitian(const Operator& rho) {
  const DenseMatrix& m = rho.dense();
  const int d = rho.dim();
  // phase from the largest-modulus diagonal entry; modulus ties (diag(-1,1)
  // style matrices) resolve toward the entry needing the smallest rotation
  int best = -1;
  double bestabs = 0;
  for (int i = 0; i < d; ++i)
    if (std::abs(m(i, i)) > bestabs * (1.0 + 1e-12)) {
      bestabs = std::abs(m(i, i));
      best = i;
    } else if (best >= 0 && std::abs(m(i, i)) > bestabs * (1.0 - 1e-12) &&
               std::abs(std::arg(m(i, i))) < std::abs(std::arg(m(best, best)))) {
      best = i;
    }
  Complex phase;
  if (best >= 0 && bestabs > 1e-10 * hs_norm(rho)) {
    phase = std::polar(1.0, -std::arg(m(best, best)));
  } else {
    // zero diagonal (sigma_x-like modes): Tr[rho rho] = e^{2i phi} Tr[M^2]
    // with M Hermitian, so half its argument undoes the phase up to sign.
    const Complex t = (m * m).trace();
    phase = std::polar(1.0, -0.5 * std::arg(t));
    DenseMatrix r = phase * m;
    // disambiguate the sign with the first dominant entry
    Eigen::Index rr = 0, cc = 0;
    r.cwiseAbs().maxCoeff(&rr, &cc);
    const Complex lead = r(rr, cc);
    const double key = std::abs(lead.real()) >= std::abs(lead.imag()) ? lead.real() : lead.imag();
    if (key < 0) phase = -phase;
  }
  DenseMatrix r = phase * m;
  DenseMatrix h = (r + r.adjoint()) / 2.0;
  const double nrm = h.norm();
  if (nrm < 1e-300) return Operator(h);
  return Operator(h / nrm);
}

PhaseSplit hermitian_split(const EigenPair& p, double tol) {
  if (std::abs(p.value.imag()) > tol)
    throw SplitError("hermitian_split: eigenvalue has imaginary part " +
                     std::to_string(p.value.imag()) + "; combine the conjugate pair with hermitize");
  const Operator h = fix_phase_hermitian(p.right);
  const double hdev = 1.0 - std::min(1.0, std::abs(hs_inner(h, p.right)) / hs_norm(p.right));
  if (hdev > std::max(tol, 1e-6))
    throw SplitError("hermitian_split: eigenmatrix is not Hermitian up to a phase (deviation " +
                     std::to_string(hdev) + ")");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h.dense());
  const Eigen::VectorXd ev = es.eigenvalues();
  double s_plus = 0, s_minus = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 0) s_plus += ev(i);
    if (ev(i) < 0) s_minus -= ev(i);
  }
  if (s_plus <= 0 || s_minus <= 0)
    throw SplitError("hermitian_split: single-signed spectrum (trace-carrying mode); "
                     "the split is undefined");
  const int d = h.dim();
  DenseMatrix plus = DenseMatrix::Zero(d, d), minus = DenseMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const auto v = es.eigenvectors().col(i);
    if (ev(i) > 0) plus += (ev(i) / s_plus) * (v * v.adjoint());
    if (ev(i) < 0) minus += (-ev(i) / s_minus) * (v * v.adjoint());
  }
  PhaseSplit out;
  out.plus = Operator(std::move(plus));
  out.minus = Operator(std::move(minus));
  out.weight = 0.5 * (s_plus + s_minus);
  return out;
}

std::pair<Operator, Operator> hermitize(const EigenPair& p, const EigenPair& p_conj, double tol) {
  const double scale = std::max(1.0, std::abs(p.value));
  if (std::abs(p_conj.value - std::conj(p.value)) > std::max(tol, 1e-8) * scale)
    throw PairingError("hermitize: eigenvalues are not conjugate partners");
  // p_conj.right must equal p.right^dag up to a global phase
  const Complex overlap = hs_inner(p.right.adjoint(), p_conj.right);
  if (std::abs(overlap) < 1.0 - 1e-4)
    throw PairingError("hermitize: eigenmatrices are not adjoint partners (|overlap| = " +
                       std::to_string(std::abs(overlap)) + ")");
  const DenseMatrix& r = p.right.dense();
  DenseMatrix a = r + r.adjoint();
  DenseMatrix b = Complex(0, 1) * (r - r.adjoint());
  const double na = a.norm(), nb = b.norm();
  Operator first = na > 1e-12 ? Operator(a / na) : Operator(a);
  Operator second = nb > 1e-12 ? Operator(b / nb) : Operator(DenseMatrix::Zero(r.rows(), r.cols()));
  return {std::move(first), std::move(second)};
}

JordanReport detect_jordan(const SuperMatrix& l, Complex lambda, double rank_tol,
                           double cluster_radius, const SolverOptions& opts) {
  const Eigen::Index n = l.size();
  if (n > opts.dense_limit)
    throw DimensionError("detect_jordan: dense rank factorization refused above the limit");
  if (cluster_radius <= 0) cluster_radius = 1e-6 * std::max(1.0, std::abs(lambda));

  Eigen::ComplexEigenSolver<DenseMatrix> es(DenseMatrix(l.matrix()),
                                            /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw ConvergenceError("detect_jordan: eigenvalue solve failed");
  int algebraic = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()(i) - lambda) <= cluster_radius) ++algebraic;
  if (algebraic == 0)
    throw ParameterError("detect_jordan: no eigenvalue within the cluster radius of lambda");

  DenseMatrix shifted = DenseMatrix(l.matrix());
  shifted.diagonal().array() -= lambda;
  Eigen::BDCSVD<DenseMatrix> svd(shifted);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double thresh = rank_tol * std::max(smax, 1e-300);
  int nullity = 0;
  bool indeterminate = false;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < thresh) ++nullity;
    if (sv(i) >= thresh / 10 && sv(i) <= thresh * 10) indeterminate = true;
  }
  JordanReport rep;
  rep.algebraic = algebraic;
  rep.geometric = nullity;
  rep.indeterminate = indeterminate;
  return rep;
}

}  // namespace lspec
