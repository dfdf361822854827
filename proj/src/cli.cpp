// Copyright 2026 The prodspec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prodspec/cli.hpp"

#include <iomanip>
#include <string>

#include <CLI11.hpp>

#include "prodspec/errors.hpp"
#include "prodspec/experiment.hpp"

namespace prodspec {

namespace {

// Raw option values; only those actually given (flag or config file) are
// copied over the base config.
struct RawOptions {
  std::string preset;
  std::string ensemble;
  int n = 0;
  std::string signs;
  std::string dims;
  std::string gamma;
  int replicates = 0;
  std::string mode;
  std::string limit;
  double alpha = 0.0;
  double beta = 0.0;
  std::string betas_file;
  std::uint64_t seed = 0;
  std::string out;
  int workers = 0;
  int grid_points = 0;
  double threshold = 0.0;
  bool assert_thresholds = false;
};

template <class T, class U>
void apply(const CLI::App& app, const char* name, const T& value, U& target) {
  if (app.count(name) > 0) target = value;
}

// Values from the file fill only options the command line left unset. Keys are
// the long flag names, either bare or under a [run] section.
void merge_config_file(CLI::App& run, const std::string& path) {
  for (const auto& item : CLI::ConfigTOML().from_file(path)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (!(item.parents.empty() || (item.parents.size() == 1 && item.parents.front() == "run"))) {
      throw ValidationError(item.fullname(), "unknown configuration section");
    }
    if (item.name == "config") throw ValidationError("config", "config files do not nest");
    CLI::Option* opt = run.get_option_no_throw("--" + item.name);
    if (opt == nullptr) throw ValidationError(item.name, "unknown configuration key");
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

ExperimentConfig assemble(const CLI::App& run, const RawOptions& raw) {
  ExperimentConfig c = raw.preset.empty() ? ExperimentConfig{} : find_preset(raw.preset).config;
  if (run.count("--ensemble") > 0) c.ensemble = parse_ensemble(raw.ensemble);
  apply(run, "--n", raw.n, c.n);
  apply(run, "--signs", raw.signs, c.signs);
  apply(run, "--dims", raw.dims, c.dims);
  apply(run, "--gamma", raw.gamma, c.gamma);
  apply(run, "--replicates", raw.replicates, c.replicates);
  if (run.count("--mode") > 0) c.mode = parse_mode(raw.mode);
  if (run.count("--limit") > 0) c.limit = parse_limit_kind(raw.limit);
  apply(run, "--alpha", raw.alpha, c.alpha);
  apply(run, "--beta", raw.beta, c.beta);
  apply(run, "--betas-file", raw.betas_file, c.betas_file);
  apply(run, "--seed", raw.seed, c.seed);
  apply(run, "--out", raw.out, c.out_dir);
  apply(run, "--workers", raw.workers, c.workers);
  apply(run, "--grid-points", raw.grid_points, c.grid_points);
  apply(run, "--threshold", raw.threshold, c.threshold);
  if (run.count("--assert") > 0) c.assert_thresholds = raw.assert_thresholds;
  return c;
}

void print_ks(std::ostream& out, const char* label, const std::optional<KsReport>& ks) {
  if (ks) out << "  " << std::left << std::setw(16) << label << ks->statistic << "\n";
}

int execute_run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const ExperimentReport r = run_experiment(config);
  out << "limit           " << r.limit << "\n";
  out << "log_an          " << r.log_an << "\n";
  print_ks(out, "scalar KS", r.scalar_ks);
  print_ks(out, "matrix KS", r.matrix_ks);
  print_ks(out, "angle KS", r.angle_ks);
  print_ks(out, "path KS", r.path_ks);
  if (r.degenerate && r.scalar_mass) out << "  scalar mass     " << *r.scalar_mass << "\n";
  if (r.degenerate && r.matrix_mass) out << "  matrix mass     " << *r.matrix_mass << "\n";
  out << "report          " << r.report_path << "\n";
  if (r.partial) {
    err << "prodspec: matrix path aborted: " << r.failure << "\n";
    return kExitConditioning;
  }
  if (config.assert_thresholds && !r.thresholds_met) {
    err << "prodspec: acceptance thresholds not met\n";
    return kExitThreshold;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limiting spectral distributions of products of random matrices", "prodspec"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RawOptions raw;
  auto* run = app.add_subcommand("run", "simulate one configuration and compare with its limit");
  std::string config_path;
  run->add_option("--config", config_path, "flat key = value file mirroring the flags")->check(CLI::ExistingFile);
  run->add_option("--preset", raw.preset, "start from a named preset");
  run->add_option("--ensemble", raw.ensemble, "ginibre | haar");
  run->add_option("--n", raw.n, "matrix size");
  run->add_option("--signs", raw.signs, "exponent pattern over {+,-}, e.g. -+");
  run->add_option("--dims", raw.dims, "haar unitary sizes, comma separated");
  run->add_option("--gamma", raw.gamma, "'m' or a positive real");
  run->add_option("--replicates", raw.replicates, "independent spectra per path");
  run->add_option("--mode", raw.mode, "scalar | matrix | both");
  run->add_option("--limit", raw.limit, "auto | explicit | betas");
  run->add_option("--alpha", raw.alpha, "explicit ginibre limit alpha");
  run->add_option("--beta", raw.beta, "explicit ginibre limit beta");
  run->add_option("--betas-file", raw.betas_file, "coefficient file for limit = betas");
  run->add_option("--seed", raw.seed, "master seed");
  run->add_option("--out", raw.out, "output directory");
  run->add_option("--workers", raw.workers, "OpenMP threads (0: default)");
  run->add_option("--grid-points", raw.grid_points, "rows of the CDF tables");
  run->add_option("--threshold", raw.threshold, "KS bound enforced by --assert");
  run->add_flag("--assert", raw.assert_thresholds, "exit 4 when a threshold is missed");

  auto* list = app.add_subcommand("presets", "list the named scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (list->parsed()) {
      for (const auto& p : presets()) out << std::left << std::setw(18) << p.name << p.summary << "\n";
      return kExitOk;
    }
    if (!config_path.empty()) merge_config_file(*run, config_path);
    return execute_run(assemble(*run, raw), out, err);
  } catch (const CLI::Error& e) {
    err << "prodspec: invalid configuration file: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "prodspec: invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConditioningError& e) {
    err << "prodspec: " << e.what() << "\n";
    return kExitConditioning;
  } catch (const std::exception& e) {
    err << "prodspec: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace prodspec
