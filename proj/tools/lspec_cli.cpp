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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "lspec/analysis.hpp"
#include "lspec/dynamics.hpp"
#include "lspec/io.hpp"
#include "lspec/run_config.hpp"
#include "lspec/symmetry.hpp"
#include "lspec/version.hpp"

namespace {

using namespace lspec;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitAnalysis = 4;

struct CliArgs {
  std::string config_path;
  std::string out_path;
  int threads = 0;
  long long seed = -1;
};

RunConfig load_config(const CliArgs& args) {
  RunConfig cfg = load_run_config(args.config_path);
  if (!args.out_path.empty()) cfg.out_path = args.out_path;
  if (args.threads > 0) cfg.threads = args.threads;
  if (args.seed >= 0) {
    cfg.seed = static_cast<std::uint64_t>(args.seed);
    cfg.solver.seed = cfg.seed;
  }
  return cfg;
}

// output sink: file when a path is configured, stdout otherwise
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open output path " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    if (file_.is_open() && !file_.good()) throw IoError("write failure on output");
  }

 private:
  std::ofstream file_;
};

Spectrum solve_spectrum(const RunConfig& cfg, const SuperMatrix& l, int k) {
  if (cfg.solver_mode == "dense") return full_spectrum(l, cfg.solver);
  return leading_spectrum(l, k, cfg.solver.shift, cfg.solver);
}

int cmd_spectrum(const RunConfig& cfg) {
  const ModelSpec model = build_model_from_config(cfg);
  const SuperMatrix l = build_liouvillian(model);
  int k = cfg.solver.k;
  const auto size = l.size();
  if (k > size) {
    std::cerr << "warning: k = " << k << " exceeds D^2 = " << size << "; clamping\n";
    k = static_cast<int>(size);
  }
  const Spectrum s = solve_spectrum(cfg, l, std::max(2, k));
  Sink sink(cfg.out_path);
  if (cfg.format == "json")
    sink.stream() << spectrum_to_json(s).dump(2) << "\n";
  else
    write_spectrum_csv(sink.stream(), s, provenance_comment(cfg.canonical_dump, cfg.seed));
  sink.finish();
  return kExitOk;
}

int cmd_steady(const RunConfig& cfg) {
  const ModelSpec model = build_model_from_config(cfg);
  const Operator rho = steady_state(build_liouvillian(model), cfg.solver);
  Sink sink(cfg.out_path);
  if (cfg.format == "json")
    sink.stream() << operator_to_json(rho).dump(2) << "\n";
  else
    write_operator_csv(sink.stream(), rho, provenance_comment(cfg.canonical_dump, cfg.seed));
  sink.finish();
  return kExitOk;
}

int cmd_gap(const RunConfig& cfg) {
  const ModelSpec model = build_model_from_config(cfg);
  const auto [gap, im] = liouvillian_gap(build_liouvillian(model), cfg.solver);
  Sink sink(cfg.out_path);
  sink.stream() << nlohmann::json({{"gap", gap}, {"im_lambda1", im}}).dump(2) << "\n";
  sink.finish();
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg) {
  if (!cfg.scan) throw ParameterError("config: scan block required for the scan command");
  const auto& sb = *cfg.scan;
  std::vector<double> grid(sb.steps);
  for (int i = 0; i < sb.steps; ++i)
    grid[i] = sb.min + (sb.max - sb.min) * i / (sb.steps - 1);

  std::vector<double> n_values = sb.n_values;
  if (n_values.empty()) n_values.push_back(cfg.model.count("n") ? cfg.model.at("n") : 1.0);

  ScanOptions opts;
  opts.solver = cfg.solver;
  opts.threads = cfg.threads;
  opts.cutoff = cfg.model.count("cutoff") ? static_cast<int>(cfg.model.at("cutoff")) : 0;
  const ModelFamily family = make_family(cfg);

  std::vector<ScanRecord> all;
  for (double big_n : n_values) {
    const std::vector<ScanRecord> recs = scan(family, grid, big_n, cfg.solver.k, opts);
    all.insert(all.end(), recs.begin(), recs.end());
  }
  Sink sink(cfg.out_path);
  write_scan_csv(sink.stream(), all, provenance_comment(cfg.canonical_dump, cfg.seed));
  sink.finish();
  return kExitOk;
}

int cmd_evolve(const RunConfig& cfg) {
  if (!cfg.evolve) throw ParameterError("config: evolve block required for the evolve command");
  const auto& eb = *cfg.evolve;
  const ModelSpec model = build_model_from_config(cfg);
  const SuperMatrix l = build_liouvillian(model);
  const int d = model.dim;

  DenseMatrix rho0 = DenseMatrix::Zero(d, d);
  if (eb.initial == "vacuum") {
    rho0(0, 0) = 1;
  } else if (eb.initial == "maximally_mixed") {
    rho0 = DenseMatrix::Identity(d, d) / static_cast<double>(d);
  } else if (eb.initial == "fock") {
    if (eb.fock < 0 || eb.fock >= d) throw ParameterError("config: evolve.fock out of range");
    rho0(eb.fock, eb.fock) = 1;
  } else {
    throw ParameterError("config: unknown evolve.initial \"" + eb.initial + "\"");
  }

  Operator obs = number_op(d);
  if (eb.observable == "sigma_x" || eb.observable == "sigma_y" || eb.observable == "sigma_z") {
    if (d != 2) throw ParameterError("config: Pauli observables need a two-level model");
    obs = eb.observable == "sigma_x" ? sigma_x() : eb.observable == "sigma_y" ? sigma_y()
                                                                              : sigma_z();
  } else if (eb.observable != "number") {
    throw ParameterError("config: unknown evolve.observable \"" + eb.observable + "\"");
  }

  std::vector<double> times, values;
  Operator state(rho0);
  const double dt = eb.t_max / eb.steps;
  times.push_back(0);
  values.push_back(expectation(state, obs));
  for (int i = 1; i <= eb.steps; ++i) {
    state = evolve_expm(l, state, dt);
    times.push_back(i * dt);
    values.push_back(expectation(state, obs));
  }
  Sink sink(cfg.out_path);
  write_track_csv(sink.stream(), times, values, eb.observable,
                  provenance_comment(cfg.canonical_dump, cfg.seed));
  sink.finish();
  return kExitOk;
}

int cmd_sectors(const RunConfig& cfg) {
  const ModelSpec model = build_model_from_config(cfg);
  const SuperMatrix l = build_liouvillian(model);
  const SymmetrySuperOp s = number_parity_symmetry(model.dim, cfg.symmetry_order);
  const SectorDecomposition dec = sector_decompose(l, s);
  const auto spectra = sector_leading_spectra(dec, std::max(2, cfg.solver.k),
                                              cfg.solver.shift, cfg.solver);
  Sink sink(cfg.out_path);
  sink.stream() << sector_summary_json(dec, spectra).dump(2) << "\n";
  sink.finish();
  return kExitOk;
}

int cmd_fit_bifurcation(const RunConfig& cfg) {
  if (!cfg.scan) throw ParameterError("config: scan block required for fit-bifurcation");
  const auto& sb = *cfg.scan;
  if (sb.n_values.size() < 2)
    throw ParameterError("config: fit-bifurcation needs scan.n_values");

  std::vector<double> grid(sb.steps);
  for (int i = 0; i < sb.steps; ++i)
    grid[i] = sb.min + (sb.max - sb.min) * i / (sb.steps - 1);

  ScanOptions opts;
  opts.solver = cfg.solver;
  opts.threads = cfg.threads;
  opts.cutoff = cfg.model.count("cutoff") ? static_cast<int>(cfg.model.at("cutoff")) : 0;
  const ModelFamily family = make_family(cfg);
  const double gamma = cfg.model.count("gamma") ? cfg.model.at("gamma") : 1.0;
  const double im_tol = cfg.fit_im_tol * gamma;

  std::vector<std::pair<double, double>> gb_table;
  std::vector<std::string> warnings;
  for (double big_n : sb.n_values) {
    try {
      auto modes_at = [&](double zeta) {
        const ModelSpec m = family(zeta, big_n, opts.cutoff);
        SolverOptions so = cfg.solver;
        so.k = std::max(4, cfg.solver.k);
        const Spectrum s = leading_spectrum(build_liouvillian(m), so.k, so.shift, so);
        std::vector<Complex> vals;
        for (const auto& p : s.pairs) vals.push_back(p.value);
        return vals;
      };
      gb_table.emplace_back(big_n, bifurcation_point_tracked(grid, modes_at, im_tol));
    } catch (const Error& e) {
      warnings.push_back("N = " + fmt_double(big_n) + ": " + e.what());
    }
  }

  if (gb_table.size() < 4) {
    std::cerr << "fit-bifurcation: only " << gb_table.size()
              << " usable N values (need >= 4)\n";
    for (const auto& w : warnings) std::cerr << "  " << w << "\n";
    return kExitAnalysis;
  }

  const PowerLawFit fit = power_law_fit(gb_table);
  Sink sink(cfg.out_path);
  sink.stream() << fit_report_json(fit, gb_table, warnings).dump(2) << "\n";
  sink.finish();
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liouvillian spectra and dissipative phase-transition diagnostics"};
  app.set_version_flag("--version", std::string("lspec ") + lspec::kVersion);
  app.require_subcommand(1);

  CliArgs args;
  int (*handler)(const RunConfig&) = nullptr;

  auto add = [&](const char* name, const char* help, int (*fn)(const RunConfig&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config_path, "JSON run configuration")->required();
    sub->add_option("--out", args.out_path, "output path (default: configured or stdout)");
    sub->add_option("--threads", args.threads, "worker threads (default: LSPEC_THREADS or cores)");
    sub->add_option("--seed", args.seed, "seed for iterative-solver start vectors");
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };

  add("spectrum", "leading eigenvalue table (CSV/JSON)", cmd_spectrum);
  add("steady", "steady-state density matrix", cmd_steady);
  add("gap", "Liouvillian gap and Im lambda_1", cmd_gap);
  add("scan", "parameter sweep to ScanRecord CSV", cmd_scan);
  add("evolve", "observable track under e^{Lt}", cmd_evolve);
  add("fit-bifurcation", "bifurcation points G_B(N) and the power-law fit", cmd_fit_bifurcation);
  add("sectors", "symmetry-sector summary", cmd_sectors);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = load_config(args);
    return handler(cfg);
  } catch (const lspec::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lspec::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const lspec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAnalysis;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitAnalysis;
  }
}
