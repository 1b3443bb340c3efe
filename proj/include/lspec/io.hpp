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
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lspec/analysis.hpp"
#include "lspec/spectra.hpp"
#include "lspec/symmetry.hpp"

namespace lspec {

/// Shortest round-trip-exact decimal rendering ("%.17g"); all CSV output
/// goes through this so identical runs emit identical bytes.
std::string fmt_double(double v);

/// FNV-1a over a string; stamps config hashes into output headers.
std::uint64_t fnv1a(const std::string& s);

/// "# lspec <version> config=<hex hash> seed=<seed>"
std::string provenance_comment(const std::string& config_dump, std::uint64_t seed);

nlohmann::json spectrum_to_json(const Spectrum& s);
void write_spectrum_csv(std::ostream& os, const Spectrum& s, const std::string& comment);

/// Eigenvalue scatter (re, im) only, for spectrum plots.
void write_eigenvalue_scatter_csv(std::ostream& os, const Spectrum& s,
                                  const std::string& comment);

void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records,
                    const std::string& comment);

nlohmann::json operator_to_json(const Operator& a);
void write_operator_csv(std::ostream& os, const Operator& a, const std::string& comment);

void write_track_csv(std::ostream& os, const std::vector<double>& times,
                     const std::vector<double>& values, const std::string& value_name,
                     const std::string& comment);

nlohmann::json sector_summary_json(const SectorDecomposition& dec,
                                   const std::vector<SectorSpectrum>& spectra);

nlohmann::json fit_report_json(const PowerLawFit& fit,
                               const std::vector<std::pair<double, double>>& gb_table,
                               const std::vector<std::string>& warnings);

}  // namespace lspec
