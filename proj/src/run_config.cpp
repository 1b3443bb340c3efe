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

#include "lspec/run_config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace lspec {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParameterError("config: missing or non-numeric field \"" + key + "\"");
  return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ParameterError("config: field \"" + key + "\" must be a number");
  return j[key].get<double>();
}

const std::set<std::string> kModelTypes = {"kerr", "kerr_thermo", "two_photon",
                                           "two_photon_thermo", "two_level"};

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: JSON parse failure: ") + e.what());
  }

  RunConfig cfg;
  if (!j.contains("model") || !j["model"].is_object())
    throw ParameterError("config: missing \"model\" object");
  const json& jm = j["model"];
  if (!jm.contains("type") || !jm["type"].is_string())
    throw ParameterError("config: model.type must be a string");
  cfg.model_type = jm["type"].get<std::string>();
  if (!kModelTypes.count(cfg.model_type))
    throw ParameterError("config: unknown model.type \"" + cfg.model_type + "\"");
  for (auto it = jm.begin(); it != jm.end(); ++it) {
    if (it.key() == "type") continue;
    if (!it.value().is_number())
      throw ParameterError("config: model." + it.key() + " must be a number");
    cfg.model[it.key()] = it.value().get<double>();
  }

  if (j.contains("solver")) {
    const json& js = j["solver"];
    cfg.solver_mode = js.value("mode", std::string("shift_invert"));
    if (cfg.solver_mode != "shift_invert" && cfg.solver_mode != "dense")
      throw ParameterError("config: solver.mode must be \"dense\" or \"shift_invert\"");
    cfg.solver.k = static_cast<int>(number_or(js, "k", cfg.solver.k));
    if (js.contains("shift")) {
      const json& sh = js["shift"];
      if (sh.is_number())
        cfg.solver.shift = Complex(sh.get<double>(), 0);
      else if (sh.is_array() && sh.size() == 2)
        cfg.solver.shift = Complex(sh[0].get<double>(), sh[1].get<double>());
      else
        throw ParameterError("config: solver.shift must be a number or [re, im]");
    }
    cfg.solver.residual_factor = number_or(js, "tol", cfg.solver.residual_factor);
    cfg.solver.zero_tol_factor = number_or(js, "zero_tol", cfg.solver.zero_tol_factor);
    cfg.solver.max_subspace = static_cast<int>(number_or(js, "max_subspace", cfg.solver.max_subspace));
    if (cfg.solver.residual_factor <= 0 || cfg.solver.zero_tol_factor <= 0)
      throw ParameterError("config: solver tolerances must be positive");
    if (cfg.solver.k < 1) throw ParameterError("config: solver.k must be >= 1");
  }

  if (j.contains("scan")) {
    const json& js = j["scan"];
    RunConfig::ScanBlock sb;
    if (!js.contains("parameter") || !js["parameter"].is_string())
      throw ParameterError("config: scan.parameter must name a model field");
    sb.parameter = js["parameter"].get<std::string>();
    sb.min = require_number(js, "min");
    sb.max = require_number(js, "max");
    sb.steps = static_cast<int>(require_number(js, "steps"));
    if (sb.steps < 2) throw ParameterError("config: scan.steps must be >= 2");
    if (!(sb.max > sb.min)) throw ParameterError("config: scan.max must exceed scan.min");
    if (js.contains("n_values")) {
      if (!js["n_values"].is_array())
        throw ParameterError("config: scan.n_values must be an array");
      for (const auto& v : js["n_values"]) sb.n_values.push_back(v.get<double>());
    }
    cfg.scan = std::move(sb);
  }

  if (j.contains("evolve")) {
    const json& je = j["evolve"];
    RunConfig::EvolveBlock eb;
    eb.t_max = require_number(je, "t_max");
    if (!(eb.t_max > 0)) throw ParameterError("config: evolve.t_max must be positive");
    eb.steps = static_cast<int>(number_or(je, "steps", eb.steps));
    if (eb.steps < 1) throw ParameterError("config: evolve.steps must be >= 1");
    eb.initial = je.value("initial", eb.initial);
    eb.fock = static_cast<int>(number_or(je, "fock", 0));
    eb.observable = je.value("observable", eb.observable);
    cfg.evolve = std::move(eb);
  }

  if (j.contains("symmetry")) cfg.symmetry_order = j["symmetry"].value("order", 2);
  if (cfg.symmetry_order < 2) throw ParameterError("config: symmetry.order must be >= 2");
  if (j.contains("fit")) {
    cfg.fit_im_tol = number_or(j["fit"], "im_tol", cfg.fit_im_tol);
    if (!(cfg.fit_im_tol > 0)) throw ParameterError("config: fit.im_tol must be positive");
  }

  if (j.contains("output")) {
    const json& jo = j["output"];
    cfg.out_path = jo.value("path", std::string());
    cfg.format = jo.value("format", std::string("csv"));
    if (cfg.format != "csv" && cfg.format != "json")
      throw ParameterError("config: output.format must be \"csv\" or \"json\"");
  }

  cfg.seed = static_cast<std::uint64_t>(number_or(j, "seed", 42));
  cfg.solver.seed = cfg.seed;
  cfg.threads = static_cast<int>(number_or(j, "threads", 0));
  cfg.canonical_dump = j.dump();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

ModelSpec build_model_from_config(const RunConfig& cfg, int cutoff_override,
                                  double big_n_override) {
  auto p = [&](const std::string& key, double fallback) {
    auto it = cfg.model.find(key);
    return it == cfg.model.end() ? fallback : it->second;
  };
  auto req = [&](const std::string& key) {
    auto it = cfg.model.find(key);
    if (it == cfg.model.end())
      throw ParameterError("config: model." + key + " required for " + cfg.model_type);
    return it->second;
  };

  if (cfg.model_type == "two_level")
    return two_level_model(req("omega"), p("epsilon", 0.0), req("gamma"));

  const double big_n = big_n_override > 0 ? big_n_override : p("n", 1.0);
  int cutoff = cutoff_override > 0 ? cutoff_override : static_cast<int>(p("cutoff", 0));
  if (cutoff <= 0) cutoff = default_cutoff(big_n);

  if (cfg.model_type == "kerr")
    return kerr_model(req("delta"), req("u"), req("f"), req("gamma"), cutoff);
  if (cfg.model_type == "kerr_thermo")
    return kerr_thermo(req("delta"), req("u"), req("f"), req("gamma"), big_n, cutoff);
  if (cfg.model_type == "two_photon")
    return two_photon_model(req("delta"), req("u"), req("g"), req("gamma"), p("eta", 0.0),
                            cutoff);
  if (cfg.model_type == "two_photon_thermo")
    return two_photon_thermo(req("delta"), req("u"), req("g"), req("gamma"), p("eta", 0.0),
                             big_n, cutoff);
  throw ParameterError("config: unhandled model type " + cfg.model_type);
}

ModelFamily make_family(const RunConfig& cfg) {
  if (!cfg.scan) throw ParameterError("config: scan block required");
  const std::string param = cfg.scan->parameter;
  if (cfg.model_type == "two_level" && param != "omega" && param != "epsilon" &&
      param != "gamma")
    throw ParameterError("config: scan.parameter \"" + param + "\" unknown for two_level");
  RunConfig base = cfg;
  return [base, param](double zeta, double big_n, int cutoff) {
    RunConfig c = base;
    c.model[param] = zeta;
    return build_model_from_config(c, cutoff, big_n);
  };
}

}  // namespace lspec
