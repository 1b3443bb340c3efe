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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lspec/analysis.hpp"
#include "lspec/dynamics.hpp"
#include "lspec/symmetry.hpp"
#include "lspec/version.hpp"

namespace py = pybind11;
using namespace lspec;

namespace {

Operator to_operator(const DenseMatrix& m) { return Operator(m); }

py::dict pair_to_dict(const EigenPair& p) {
  py::dict d;
  d["value"] = p.value;
  d["right"] = p.right.dense();
  d["residual"] = p.residual;
  d["index"] = p.index;
  d["trace"] = p.right.trace();
  return d;
}

py::list spectrum_to_list(const Spectrum& s) {
  py::list out;
  for (const auto& p : s.pairs) out.append(pair_to_dict(p));
  return out;
}

SolverOptions make_solver_options(int k, Complex shift, double tol, std::uint64_t seed) {
  SolverOptions o;
  o.k = k;
  o.shift = shift;
  o.residual_factor = tol;
  o.seed = seed;
  return o;
}

}  // namespace

PYBIND11_MODULE(_lspec, m) {
  m.doc() = "Liouvillian spectral analysis for driven-dissipative models";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "LspecError", PyExc_RuntimeError);

  py::class_<ModelSpec>(m, "ModelSpec")
      .def_property_readonly("dim", [](const ModelSpec& s) { return s.dim; })
      .def_property_readonly("name", [](const ModelSpec& s) { return s.name; })
      .def_property_readonly("hamiltonian",
                             [](const ModelSpec& s) { return s.hamiltonian.dense(); })
      .def_property_readonly("params", [](const ModelSpec& s) { return s.params; })
      .def_property_readonly("jumps", [](const ModelSpec& s) {
        py::list out;
        for (const auto& j : s.jumps) out.append(py::make_tuple(j.op.dense(), j.rate));
        return out;
      });

  py::class_<SuperMatrix>(m, "SuperMatrix")
      .def_property_readonly("dim", &SuperMatrix::op_dim)
      .def_property_readonly("size", &SuperMatrix::size)
      .def_property_readonly("norm1", &SuperMatrix::norm1)
      .def("matrix", [](const SuperMatrix& l) { return DenseMatrix(l.matrix()); })
      .def("apply",
           [](const SuperMatrix& l, const DenseMatrix& rho) {
             return l.apply(to_operator(rho)).dense();
           },
           py::arg("rho"));

  m.def("kerr_model", [](double delta, double u, double f, double gamma, int cutoff) {
          return kerr_model(delta, u, f, gamma, cutoff);
        },
        py::arg("delta"), py::arg("u"), py::arg("f"), py::arg("gamma"), py::arg("cutoff"));
  m.def("kerr_thermo",
        [](double delta, double u, double f, double gamma, double n, int cutoff) {
          return kerr_thermo(delta, u, f, gamma, n, cutoff > 0 ? cutoff : default_cutoff(n));
        },
        py::arg("delta"), py::arg("u"), py::arg("f"), py::arg("gamma"), py::arg("n"),
        py::arg("cutoff") = 0);
  m.def("two_photon_model",
        [](double delta, double u, double g, double gamma, double eta, int cutoff) {
          return two_photon_model(delta, u, g, gamma, eta, cutoff);
        },
        py::arg("delta"), py::arg("u"), py::arg("g"), py::arg("gamma"), py::arg("eta"),
        py::arg("cutoff"));
  m.def("two_photon_thermo",
        [](double delta, double u, double g, double gamma, double eta, double n, int cutoff) {
          return two_photon_thermo(delta, u, g, gamma, eta, n,
                                   cutoff > 0 ? cutoff : default_cutoff(n));
        },
        py::arg("delta"), py::arg("u"), py::arg("g"), py::arg("gamma"), py::arg("eta"),
        py::arg("n"), py::arg("cutoff") = 0);
  m.def("two_level_model", &two_level_model, py::arg("omega"), py::arg("epsilon"),
        py::arg("gamma"));
  m.def("default_cutoff", &default_cutoff, py::arg("n"));

  m.def("build_liouvillian", [](const ModelSpec& spec) { return build_liouvillian(spec); },
        py::arg("model"));

  m.def("destroy", [](int dim) { return destroy(dim).dense(); }, py::arg("dim"));
  m.def("number_op", [](int dim) { return number_op(dim).dense(); }, py::arg("dim"));
  m.def("vectorize", [](const DenseMatrix& a) { return vectorize(to_operator(a)); },
        py::arg("a"));
  m.def("hs_inner",
        [](const DenseMatrix& a, const DenseMatrix& b) {
          return hs_inner(to_operator(a), to_operator(b));
        },
        py::arg("a"), py::arg("b"));
  m.def("hs_norm", [](const DenseMatrix& a) { return hs_norm(to_operator(a)); }, py::arg("a"));

  m.def("full_spectrum",
        [](const SuperMatrix& l) { return spectrum_to_list(full_spectrum(l)); },
        py::arg("liouvillian"));
  m.def("leading_spectrum",
        [](const SuperMatrix& l, int k, Complex shift, double tol, std::uint64_t seed) {
          return spectrum_to_list(
              leading_spectrum(l, k, shift, make_solver_options(k, shift, tol, seed)));
        },
        py::arg("liouvillian"), py::arg("k"), py::arg("shift") = Complex(0, 0),
        py::arg("tol") = 1e-9, py::arg("seed") = 42);
  m.def("steady_state", [](const SuperMatrix& l) { return steady_state(l).dense(); },
        py::arg("liouvillian"));
  m.def("liouvillian_gap",
        [](const SuperMatrix& l, int k) {
          SolverOptions o;
          o.k = k;
          return liouvillian_gap(l, o);
        },
        py::arg("liouvillian"), py::arg("k") = 6);

  m.def("hermitian_split",
        [](Complex value, const DenseMatrix& right, double tol) {
          EigenPair p;
          p.value = value;
          p.right = to_operator(right);
          const PhaseSplit s = hermitian_split(p, tol);
          return py::make_tuple(s.plus.dense(), s.minus.dense(), s.weight);
        },
        py::arg("value"), py::arg("right"), py::arg("tol") = 1e-8);

  m.def("evolve_expm",
        [](const SuperMatrix& l, const DenseMatrix& rho0, double t) {
          return evolve_expm(l, to_operator(rho0), t).dense();
        },
        py::arg("liouvillian"), py::arg("rho0"), py::arg("t"));

  m.def("expectation",
        [](const DenseMatrix& rho, const DenseMatrix& obs) {
          return expectation(to_operator(rho), to_operator(obs));
        },
        py::arg("rho"), py::arg("obs"));
  m.def("fidelity",
        [](const DenseMatrix& rho, const DenseMatrix& xi) {
          return fidelity(to_operator(rho), to_operator(xi));
        },
        py::arg("rho"), py::arg("xi"));
  m.def("trace_distance",
        [](const DenseMatrix& a, const DenseMatrix& b) {
          return trace_distance(to_operator(a), to_operator(b));
        },
        py::arg("a"), py::arg("b"));

  py::class_<SymmetrySuperOp>(m, "SymmetrySuperOp")
      .def_property_readonly("order", &SymmetrySuperOp::order)
      .def_property_readonly("v", [](const SymmetrySuperOp& s) { return s.v().dense(); })
      .def("apply",
           [](const SymmetrySuperOp& s, const DenseMatrix& rho) {
             return s.apply(to_operator(rho)).dense();
           },
           py::arg("rho"))
      .def("sector_of_vec_index", &SymmetrySuperOp::sector_of_vec_index, py::arg("index"));
  m.def("number_parity_symmetry",
        [](int dim, int n) { return number_parity_symmetry(dim, n); }, py::arg("dim"),
        py::arg("n"));
  m.def("check_symmetry",
        [](const SuperMatrix& l, const SymmetrySuperOp& s, double tol) {
          return check_symmetry(l, s, tol);
        },
        py::arg("liouvillian"), py::arg("symmetry"), py::arg("tol") = 1e-10);
  m.def("sector_of_operator",
        [](const SymmetrySuperOp& s, const DenseMatrix& rho, double tol) {
          return sector_of_operator(s, to_operator(rho), tol);
        },
        py::arg("symmetry"), py::arg("rho"), py::arg("tol") = 1e-8);

  py::class_<ScanRecord>(m, "ScanRecord")
      .def_readonly("zeta", &ScanRecord::zeta)
      .def_readonly("n", &ScanRecord::big_n)
      .def_readonly("gap", &ScanRecord::gap)
      .def_readonly("im_lambda1", &ScanRecord::im_lambda1)
      .def_readonly("density", &ScanRecord::density)
      .def_readonly("fid_xi", &ScanRecord::fid_xi)
      .def_readonly("fid_plus", &ScanRecord::fid_plus)
      .def_readonly("fid_minus", &ScanRecord::fid_minus)
      .def_readonly("cutoff_used", &ScanRecord::cutoff_used)
      .def_readonly("status", &ScanRecord::status);

  m.def("scan_kerr_thermo",
        [](double delta, double u, double gamma, std::vector<double> f_grid, double n, int k,
           int cutoff, int threads) {
          ModelFamily fam = [=](double f, double big_n, int co) {
            return kerr_thermo(delta, u, f, gamma, big_n,
                               co > 0 ? co : default_cutoff(big_n));
          };
          ScanOptions opts;
          opts.cutoff = cutoff;
          opts.threads = threads;
          return scan(fam, f_grid, n, k, opts);
        },
        py::arg("delta"), py::arg("u"), py::arg("gamma"), py::arg("f_grid"), py::arg("n"),
        py::arg("k") = 6, py::arg("cutoff") = 0, py::arg("threads") = 0);
  m.def("scan_two_photon_thermo",
        [](double delta, double u, double gamma, double eta, std::vector<double> g_grid,
           double n, int k, int cutoff, int threads) {
          ModelFamily fam = [=](double g, double big_n, int co) {
            return two_photon_thermo(delta, u, g, gamma, eta, big_n,
                                     co > 0 ? co : default_cutoff(big_n));
          };
          ScanOptions opts;
          opts.cutoff = cutoff;
          opts.threads = threads;
          return scan(fam, g_grid, n, k, opts);
        },
        py::arg("delta"), py::arg("u"), py::arg("gamma"), py::arg("eta"), py::arg("g_grid"),
        py::arg("n"), py::arg("k") = 6, py::arg("cutoff") = 0, py::arg("threads") = 0);

  py::class_<PowerLawFit>(m, "PowerLawFit")
      .def_readonly("amplitude", &PowerLawFit::amplitude)
      .def_readonly("exponent", &PowerLawFit::exponent)
      .def_readonly("critical_value", &PowerLawFit::critical_value)
      .def_readonly("residual", &PowerLawFit::residual);
  m.def("power_law_fit", &power_law_fit, py::arg("points"));

  m.def("jordan_decay_check",
        [](double omega, double epsilon, double gamma, Complex b, std::vector<double> times) {
          const JordanDecayResult r = jordan_decay_check(omega, epsilon, gamma, b, times);
          py::dict d;
          d["times"] = r.times;
          d["sx_numeric"] = r.sx_numeric;
          d["sy_numeric"] = r.sy_numeric;
          d["sx_closed"] = r.sx_closed;
          d["sy_closed"] = r.sy_closed;
          d["max_rel_error_x"] = r.max_rel_error_x;
          d["max_rel_error_y"] = r.max_rel_error_y;
          return d;
        },
        py::arg("omega"), py::arg("epsilon"), py::arg("gamma"), py::arg("b"), py::arg("times"));
}
