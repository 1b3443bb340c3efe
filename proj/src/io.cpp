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

#include "lspec/io.hpp"

#include <cstdio>

#include "lspec/version.hpp"

namespace lspec {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string provenance_comment(const std::string& config_dump, std::uint64_t seed) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(config_dump)));
  return std::string("# lspec ") + kVersion + " config=" + buf + " seed=" + std::to_string(seed);
}

nlohmann::json spectrum_to_json(const Spectrum& s) {
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& p : s.pairs) {
    modes.push_back({{"index", p.index},
                     {"re", p.value.real()},
                     {"im", p.value.imag()},
                     {"residual", p.residual},
                     {"trace_abs", std::abs(p.right.trace())}});
  }
  return {{"zero_tol", s.zero_tol}, {"norm1", s.norm1}, {"modes", modes}};
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s, const std::string& comment) {
  if (!comment.empty()) os << comment << "\n";
  os << "index,re,im,trace_abs,residual\n";
  for (const auto& p : s.pairs)
    os << p.index << "," << fmt_double(p.value.real()) << "," << fmt_double(p.value.imag()) << ","
       << fmt_double(std::abs(p.right.trace())) << "," << fmt_double(p.residual) << "\n";
}

void write_eigenvalue_scatter_csv(std::ostream& os, const Spectrum& s,
                                  const std::string& comment) {
  if (!comment.empty()) os << comment << "\n";
  os << "re,im\n";
  for (const auto& p : s.pairs)
    os << fmt_double(p.value.real()) << "," << fmt_double(p.value.imag()) << "\n";
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records,
                    const std::string& comment) {
  if (!comment.empty()) os << comment << "\n";
  os << "zeta,N,gap,im_lambda1,density,one_minus_f,f_plus,f_minus,status\n";
  for (const auto& r : records) {
    std::string status = r.status;
    for (auto& c : status)
      if (c == ',' || c == '\n') c = ';';
    os << fmt_double(r.zeta) << "," << fmt_double(r.big_n) << "," << fmt_double(r.gap) << ","
       << fmt_double(r.im_lambda1) << "," << fmt_double(r.density) << ","
       << fmt_double(r.one_minus_f()) << "," << fmt_double(r.fid_plus) << ","
       << fmt_double(r.fid_minus) << "," << status << "\n";
  }
}

nlohmann::json operator_to_json(const Operator& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < a.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < a.dim(); ++c) row.push_back({a(r, c).real(), a(r, c).imag()});
    rows.push_back(row);
  }
  return {{"dim", a.dim()}, {"entries", rows}};
}

void write_operator_csv(std::ostream& os, const Operator& a, const std::string& comment) {
  if (!comment.empty()) os << comment << "\n";
  os << "row,col,re,im\n";
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      os << r << "," << c << "," << fmt_double(a(r, c).real()) << ","
         << fmt_double(a(r, c).imag()) << "\n";
}

void write_track_csv(std::ostream& os, const std::vector<double>& times,
                     const std::vector<double>& values, const std::string& value_name,
                     const std::string& comment) {
  if (!comment.empty()) os << comment << "\n";
  os << "t," << value_name << "\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    os << fmt_double(times[i]) << "," << fmt_double(values[i]) << "\n";
}

nlohmann::json sector_summary_json(const SectorDecomposition& dec,
                                   const std::vector<SectorSpectrum>& spectra) {
  nlohmann::json sectors = nlohmann::json::array();
  for (std::size_t i = 0; i < dec.sectors.size(); ++i) {
    nlohmann::json vals = nlohmann::json::array();
    if (i < spectra.size())
      for (const auto& p : spectra[i].pairs)
        vals.push_back({p.value.real(), p.value.imag()});
    sectors.push_back({{"label", dec.sectors[i].label},
                       {"z", {dec.sectors[i].z.real(), dec.sectors[i].z.imag()}},
                       {"size", dec.sectors[i].indices.size()},
                       {"leading_eigenvalues", vals}});
  }
  return {{"op_dim", dec.op_dim}, {"sectors", sectors}};
}

nlohmann::json fit_report_json(const PowerLawFit& fit,
                               const std::vector<std::pair<double, double>>& gb_table,
                               const std::vector<std::string>& warnings) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& [n, gb] : gb_table) table.push_back({{"N", n}, {"G_B", gb}});
  return {{"amplitude", fit.amplitude},
          {"exponent", fit.exponent},
          {"G_c", fit.critical_value},
          {"residual", fit.residual},
          {"variance", {fit.variance[0], fit.variance[1], fit.variance[2]}},
          {"bifurcations", table},
          {"warnings", warnings}};
}

}  // namespace lspec
