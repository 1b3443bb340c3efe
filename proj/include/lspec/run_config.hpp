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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lspec/analysis.hpp"
#include "lspec/models.hpp"
#include "lspec/spectra.hpp"

namespace lspec {

/// Parsed JSON run configuration (see README for the schema). Field errors
/// throw ParameterError with the offending key in the message.
struct RunConfig {
  std::string model_type;  // kerr | kerr_thermo | two_photon | two_photon_thermo | two_level
  std::map<std::string, double> model;

  std::string solver_mode = "shift_invert";  // or "dense"
  SolverOptions solver;

  struct ScanBlock {
    std::string parameter;        // model key swept as zeta
    double min = 0, max = 0;
    int steps = 0;                // >= 2
    std::vector<double> n_values; // empty: use model["n"]
  };
  std::optional<ScanBlock> scan;

  struct EvolveBlock {
    double t_max = 1.0;
    int steps = 100;
    std::string initial = "vacuum";  // vacuum | maximally_mixed | fock
    int fock = 0;
    std::string observable = "number";  // number | sigma_x | sigma_y | sigma_z
  };
  std::optional<EvolveBlock> evolve;

  int symmetry_order = 2;
  double fit_im_tol = 1e-6;  // |Im lambda_1| threshold for bifurcation detection

  std::string out_path;
  std::string format = "csv";  // csv | json

  std::uint64_t seed = 42;
  int threads = 0;

  std::string canonical_dump;  // hashed into output provenance comments
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Instantiates the configured model; cutoff_override > 0 replaces the
/// configured (or heuristic) cutoff, big_n_override > 0 replaces N for the
/// thermodynamic families.
ModelSpec build_model_from_config(const RunConfig& cfg, int cutoff_override = 0,
                                  double big_n_override = 0);

/// Scan family sweeping cfg.scan->parameter of the configured model.
ModelFamily make_family(const RunConfig& cfg);

}  // namespace lspec
