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

#include "lspec/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "arnoldi.hpp"

namespace lspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int snap_root(double phase_diff, int n) {
  double frac = phase_diff / kTwoPi * n;
  int j = static_cast<int>(std::llround(frac));
  j %= n;
  if (j < 0) j += n;
  return j;
}

bool is_numerically_diagonal(const DenseMatrix& m, double tol) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != c && std::abs(m(r, c)) > tol) return false;
  return true;
}

}  // namespace

SymmetrySuperOp SymmetrySuperOp::from_unitary(const Operator& v, int order, double tol) {
  if (order < 2) throw ParameterError("SymmetrySuperOp: order must be >= 2");
  const int d = v.dim();
  const double udev = (v.dense().adjoint() * v.dense() - DenseMatrix::Identity(d, d)).norm();
  if (udev > 1e-12 * d)
    throw ParameterError("SymmetrySuperOp: V is not unitary (deviation " + std::to_string(udev) +
                         ")");

  SymmetrySuperOp s;
  s.v_ = v;
  s.order_ = order;

  Eigen::VectorXd phases(d);
  if (is_numerically_diagonal(v.dense(), tol)) {
    for (int i = 0; i < d; ++i) phases(i) = std::arg(v(i, i));
  } else {
    // numeric fallback: sectors live in the eigenbasis W of V
    Eigen::ComplexEigenSolver<DenseMatrix> es(v.dense());
    if (es.info() != Eigen::Success)
      throw ConvergenceError("SymmetrySuperOp: eigenbasis of V did not converge");
    // V is normal, so a QR pass restores exact orthonormality of W
    Eigen::HouseholderQR<DenseMatrix> qr(es.eigenvectors());
    DenseMatrix w = qr.householderQ() * DenseMatrix::Identity(d, d);
    // recompute phases from the Rayleigh quotients of the cleaned columns
    for (int i = 0; i < d; ++i)
      phases(i) = std::arg((w.col(i).adjoint() * v.dense() * w.col(i))(0, 0));
    s.has_basis_ = true;
    s.basis_ = std::move(w);
  }

  // V^order must be a global phase: all order*theta equal mod 2 pi
  for (int i = 0; i < d; ++i) {
    const double rel = order * (phases(i) - phases(0)) / kTwoPi;
    if (std::abs(rel - std::llround(rel)) > 1e-8)
      throw ParameterError("SymmetrySuperOp: V^order is not proportional to the identity");
  }

  s.sector_of_index_.resize(static_cast<std::size_t>(d) * d);
  for (int m = 0; m < d; ++m)
    for (int l = 0; l < d; ++l)
      s.sector_of_index_[static_cast<std::size_t>(m) * d + l] =
          snap_root(phases(m) - phases(l), order);
  return s;
}

Complex SymmetrySuperOp::sector_eigenvalue(int j) const {
  return std::polar(1.0, kTwoPi * j / order_);
}

std::vector<std::vector<Eigen::Index>> SymmetrySuperOp::sector_indices() const {
  std::vector<std::vector<Eigen::Index>> out(order_);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(sector_of_index_.size()); ++i)
    out[sector_of_index_[i]].push_back(i);
  return out;
}

Operator SymmetrySuperOp::apply(const Operator& rho) const {
  if (rho.dim() != op_dim()) throw ShapeError("SymmetrySuperOp::apply: dim mismatch");
  return Operator(v_.dense() * rho.dense() * v_.dense().adjoint());
}

DenseVector SymmetrySuperOp::to_symmetry_basis(const DenseVector& vec) const {
  if (!has_basis_) return vec;
  const Operator x = unvectorize(vec, op_dim());
  return vectorize(Operator(basis_.adjoint() * x.dense() * basis_));
}

DenseVector SymmetrySuperOp::from_symmetry_basis(const DenseVector& vec) const {
  if (!has_basis_) return vec;
  const Operator x = unvectorize(vec, op_dim());
  return vectorize(Operator(basis_ * x.dense() * basis_.adjoint()));
}

SymmetrySuperOp number_parity_symmetry(HilbertDim dim, int n) {
  if (n < 2) throw ParameterError("number_parity_symmetry: n must be >= 2");
  const int d = dim.value;
  DenseMatrix v = DenseMatrix::Zero(d, d);
  for (int m = 0; m < d; ++m) v(m, m) = std::polar(1.0, kTwoPi * (m % n) / n);
  // V is diagonal, so from_unitary classifies |m><l| to sector (m-l) mod n
  // exactly (the snap rounds an exact integer).
  return SymmetrySuperOp::from_unitary(Operator(std::move(v)), n);
}

bool check_symmetry(const SuperMatrix& l, const SymmetrySuperOp& s, double tol, int probes) {
  if (s.op_dim() != l.op_dim()) throw ShapeError("check_symmetry: dim mismatch");
  if (l.has_matrix() && !s.has_basis()) {
    // V diagonal: (U L U^dag)_{ab} = u_a L_{ab} conj(u_b) with
    // u_{(m,l)} = V_mm conj(V_ll); compare entrywise in one sweep.
    const int d = s.op_dim();
    DenseVector u(l.size());
    for (int m = 0; m < d; ++m)
      for (int ll = 0; ll < d; ++ll)
        u(static_cast<Eigen::Index>(m) * d + ll) = s.v()(m, m) * std::conj(s.v()(ll, ll));
    const SpMat& mat = l.matrix();
    double num = 0, den = 0;
    for (Eigen::Index c = 0; c < mat.outerSize(); ++c)
      for (SpMat::InnerIterator it(mat, c); it; ++it) {
        const Complex rotated = u(it.row()) * it.value() * std::conj(u(it.col()));
        num += std::norm(rotated - it.value());
        den += std::norm(it.value());
      }
    return std::sqrt(num) <= tol * std::sqrt(std::max(den, 1e-300));
  }
  // matrix-free or rotated-basis path: random probes
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  double worst = 0;
  for (int p = 0; p < probes; ++p) {
    DenseMatrix x(s.op_dim(), s.op_dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(g(rng), g(rng));
    Operator rho(x / x.norm());
    const Operator lhs = s.apply(l.apply(rho));
    const Operator rhs = l.apply(s.apply(rho));
    const double scale = std::max({hs_norm(lhs), hs_norm(rhs), 1e-300});
    worst = std::max(worst, hs_norm(lhs - rhs) / scale);
  }
  return worst <= tol;
}

SectorDecomposition sector_decompose(const SuperMatrix& l, const SymmetrySuperOp& s, double tol) {
  if (!check_symmetry(l, s, std::max(tol, 1e-10)))
    throw ParameterError("sector_decompose: [L, U] != 0; refusing to decompose");

  const SpMat* matp = &l.matrix();
  SpMat rotated;
  if (s.has_basis()) {
    // conjugate L into the eigenbasis of V with Q = W kron W^*; dense
    // fallback, so only sensible at modest sizes
    if (l.size() > 4096)
      throw DimensionError("sector_decompose: non-diagonal V supported only for D^2 <= 4096");
    DenseMatrix q(l.size(), l.size());
    for (Eigen::Index col = 0; col < l.size(); ++col)
      q.col(col) = s.from_symmetry_basis(DenseVector::Unit(l.size(), col));
    DenseMatrix lp = q.adjoint() * DenseMatrix(l.matrix()) * q;
    const double prune = 1e-14 * std::max(1.0, lp.cwiseAbs().maxCoeff());
    rotated = lp.sparseView(1.0, prune);
    rotated.makeCompressed();
    matp = &rotated;
  }

  const auto index_sets = s.sector_indices();
  std::vector<Eigen::Index> position(l.size());
  std::vector<int> sector_of(l.size());
  for (int j = 0; j < s.order(); ++j)
    for (std::size_t p = 0; p < index_sets[j].size(); ++p) {
      position[index_sets[j][p]] = static_cast<Eigen::Index>(p);
      sector_of[index_sets[j][p]] = j;
    }

  std::vector<std::vector<Eigen::Triplet<Complex>>> trips(s.order());
  double leak2 = 0;
  const SpMat& mat = *matp;
  for (Eigen::Index c = 0; c < mat.outerSize(); ++c)
    for (SpMat::InnerIterator it(mat, c); it; ++it) {
      const int sr = sector_of[it.row()], sc = sector_of[it.col()];
      if (sr == sc)
        trips[sr].emplace_back(position[it.row()], position[it.col()], it.value());
      else
        leak2 += std::norm(it.value());
    }
  if (std::sqrt(leak2) > std::max(tol, 1e-10) * std::max(l.norm1(), 1.0))
    throw ParameterError("sector_decompose: cross-sector leakage " + std::to_string(std::sqrt(leak2)));

  SectorDecomposition dec;
  dec.op_dim = s.op_dim();
  dec.symmetry = &s;
  for (int j = 0; j < s.order(); ++j) {
    Sector sec;
    sec.label = j;
    sec.z = s.sector_eigenvalue(j);
    sec.indices = index_sets[j];
    const Eigen::Index bs = static_cast<Eigen::Index>(sec.indices.size());
    sec.block.resize(bs, bs);
    sec.block.setFromTriplets(trips[j].begin(), trips[j].end());
    sec.block.makeCompressed();
    dec.sectors.push_back(std::move(sec));
  }
  return dec;
}

Operator SectorDecomposition::embed(int sector_label, const DenseVector& block_vec) const {
  const Sector* sec = nullptr;
  for (const auto& s : sectors)
    if (s.label == sector_label) sec = &s;
  if (!sec) throw ParameterError("SectorDecomposition::embed: unknown sector");
  if (block_vec.size() != static_cast<Eigen::Index>(sec->indices.size()))
    throw ShapeError("SectorDecomposition::embed: block length mismatch");
  DenseVector full = DenseVector::Zero(static_cast<Eigen::Index>(op_dim) * op_dim);
  for (std::size_t p = 0; p < sec->indices.size(); ++p) full(sec->indices[p]) = block_vec(p);
  if (symmetry && symmetry->has_basis()) full = symmetry->from_symmetry_basis(full);
  return unvectorize(full, op_dim);
}

SectorSpectrum sector_leading_spectrum(const SectorDecomposition& dec, int label, int k,
                                       Complex shift, const SolverOptions& opts) {
  const Sector* sec = nullptr;
  for (const auto& s : dec.sectors)
    if (s.label == label) sec = &s;
  if (!sec) throw ParameterError("sector_leading_spectrum: unknown sector label");

  SectorSpectrum ss;
  ss.label = sec->label;
  ss.z = sec->z;
  const Eigen::Index n = sec->block.rows();
  if (n == 0) return ss;

  const int kk = static_cast<int>(std::min<Eigen::Index>(k, n));
  std::vector<std::pair<Complex, DenseVector>> found;
  std::vector<double> res;
  if (n <= 256) {
    Eigen::ComplexEigenSolver<DenseMatrix> es(DenseMatrix(sec->block));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(es.eigenvalues()(a) - shift) < std::abs(es.eigenvalues()(b) - shift);
    });
    for (int i = 0; i < kk; ++i) {
      DenseVector x = es.eigenvectors().col(order[i]);
      x.normalize();
      found.emplace_back(es.eigenvalues()(order[i]), x);
      res.push_back((sec->block * x - es.eigenvalues()(order[i]) * x).norm());
    }
  } else {
    detail::ArnoldiOptions aopts;
    aopts.rel_tol = opts.residual_factor;
    aopts.max_subspace = opts.max_subspace;
    aopts.seed = opts.seed;
    double bn1 = 0;
    for (Eigen::Index c = 0; c < sec->block.outerSize(); ++c) {
      double s2 = 0;
      for (SpMat::InnerIterator it(sec->block, c); it; ++it) s2 += std::abs(it.value());
      bn1 = std::max(bn1, s2);
    }
    auto eigs = detail::shift_invert_eigs(sec->block, kk, shift, bn1, aopts);
    for (int i = 0; i < kk; ++i) {
      found.emplace_back(eigs.values[i], eigs.vectors.col(i));
      res.push_back(eigs.residuals[i]);
    }
  }
  for (int i = 0; i < static_cast<int>(found.size()); ++i) {
    EigenPair p;
    p.value = found[i].first;
    p.right = dec.embed(sec->label, found[i].second);
    p.residual = res[i];
    ss.pairs.push_back(std::move(p));
  }
  std::stable_sort(ss.pairs.begin(), ss.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    return spectral_order(a.value, b.value);
  });
  for (std::size_t i = 0; i < ss.pairs.size(); ++i) ss.pairs[i].index = static_cast<int>(i);
  return ss;
}

std::vector<SectorSpectrum> sector_leading_spectra(const SectorDecomposition& dec, int k,
                                                   Complex shift, const SolverOptions& opts) {
  std::vector<SectorSpectrum> out;
  out.reserve(dec.sectors.size());
  for (const auto& sec : dec.sectors)
    out.push_back(sector_leading_spectrum(dec, sec.label, k, shift, opts));
  return out;
}

Operator sector_steady_state(const SectorDecomposition& dec, const SolverOptions& opts) {
  SolverOptions o = opts;
  o.k = std::max(2, opts.k);
  SectorSpectrum ss = sector_leading_spectrum(dec, 0, o.k, Complex(0, 0), o);
  if (ss.pairs.empty()) throw ParameterError("sector_steady_state: empty z = 1 sector");
  return normalize_steady_density(ss.pairs.front().right, opts.psd_floor);
}

int sector_of_operator(const SymmetrySuperOp& s, const Operator& rho, double tol) {
  DenseVector v = vectorize(rho);
  if (s.has_basis()) v = s.to_symmetry_basis(v);
  std::vector<double> weight(s.order(), 0.0);
  for (Eigen::Index i = 0; i < v.size(); ++i) weight[s.sector_of_vec_index(i)] += std::norm(v(i));
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  int best = 0;
  for (int j = 1; j < s.order(); ++j)
    if (weight[j] > weight[best]) best = j;
  if (total <= 0 || weight[best] / total < 1.0 - tol) return -1;
  return best;
}

std::vector<Operator> symmetry_broken_basis(const std::vector<LabeledMode>& modes,
                                            const SymmetrySuperOp& s, double tol) {
  const int n = s.order();
  std::vector<const Operator*> by_sector(n, nullptr);
  for (const auto& m : modes) {
    if (m.sector < 0 || m.sector >= n)
      throw ParameterError("symmetry_broken_basis: sector label out of range");
    by_sector[m.sector] = &m.rho;
  }
  for (int j = 0; j < n; ++j)
    if (!by_sector[j])
      throw ParameterError("symmetry_broken_basis: incomplete kernel, missing sector " +
                           std::to_string(j));

  // normalize, then fix phases: self-conjugate sectors become Hermitian;
  // paired sectors satisfy rho_{n-j} = rho_j^dag with <rho_j^dag, rho_{n-j}>
  // real positive.
  std::vector<Operator> fixed(n);
  for (int j = 0; j < n; ++j) {
    const int partner = (n - j) % n;
    if (partner == j) {
      fixed[j] = fix_phase_hermitian(*by_sector[j]);
    } else if (j < partner) {
      DenseMatrix a = by_sector[j]->dense() / by_sector[j]->dense().norm();
      // deterministic own phase: dominant entry real positive
      Eigen::Index rr = 0, cc = 0;
      a.cwiseAbs().maxCoeff(&rr, &cc);
      a *= std::polar(1.0, -std::arg(a(rr, cc)));
      DenseMatrix b = by_sector[partner]->dense() / by_sector[partner]->dense().norm();
      const Complex c = (a * b).trace();  // <a^dag, b> = Tr[a b]
      if (std::abs(c) < 0.5)
        throw ConvergenceError(
            "symmetry_broken_basis: paired sector modes are not adjoint partners (|<.,.>| = " +
            std::to_string(std::abs(c)) + ")");
      b *= std::polar(1.0, -std::arg(c));
      fixed[j] = Operator(std::move(a));
      fixed[partner] = Operator(std::move(b));
    }
  }

  const double t0 = fixed[0].trace().real();
  if (std::abs(t0) < 1e-12)
    throw ConvergenceError("symmetry_broken_basis: z = 1 mode is traceless");
  const double sign = t0 > 0 ? 1.0 : -1.0;

  std::vector<Operator> basis;
  basis.reserve(n);
  for (int l = 0; l < n; ++l) {
    DenseMatrix acc = DenseMatrix::Zero(s.op_dim(), s.op_dim());
    for (int j = 0; j < n; ++j) {
      const Complex zjl = std::pow(s.sector_eigenvalue(j), l);
      acc += zjl * fixed[j].dense();
    }
    acc *= sign / std::abs(t0);
    const double herm_dev = (acc - acc.adjoint()).norm() / std::max(acc.norm(), 1e-300);
    if (herm_dev > tol)
      throw ConvergenceError("symmetry_broken_basis: rho~_" + std::to_string(l) +
                             " non-Hermitian beyond tol (deviation " + std::to_string(herm_dev) +
                             ")");
    DenseMatrix h = (acc + acc.adjoint()) / 2.0;
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > 1e-6)
      throw ConvergenceError("symmetry_broken_basis: rho~_" + std::to_string(l) +
                             " trace deviates from 1 by " + std::to_string(tr - 1.0));
    basis.emplace_back(DenseMatrix(h / tr));
  }
  return basis;
}

}  // namespace lspec
