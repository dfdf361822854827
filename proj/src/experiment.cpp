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

#include "prodspec/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "prodspec/errors.hpp"
#include "prodspec/kernels.hpp"

namespace prodspec {

namespace fs = std::filesystem;

namespace {

// Shortest round-trip form: identical doubles always print identically.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string cdf_table(const EmpiricalCdf& ecdf, const std::function<double(double)>& limit,
                      int points) {
  std::string out = "y,empirical,limit\n";
  double last = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(points - 1);
    const double y = ecdf.quantile(p);
    if (y == last) continue;
    last = y;
    out += fmt(y) + "," + fmt(ecdf(y)) + "," + fmt(limit(y)) + "\n";
  }
  return out;
}

std::string angle_table(const EmpiricalCdf& ecdf, int points) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::string out = "theta,empirical,uniform\n";
  for (int i = 0; i < points; ++i) {
    const double theta = two_pi * static_cast<double>(i) / static_cast<double>(points - 1);
    out += fmt(theta) + "," + fmt(ecdf(theta)) + "," + fmt(theta / two_pi) + "\n";
  }
  return out;
}

void add_ks(nlohmann::ordered_json& j, const std::string& prefix, const std::optional<KsReport>& r) {
  if (!r) return;
  j[prefix + ".statistic"] = r->statistic;
  j[prefix + ".count_a"] = r->count_a;
  j[prefix + ".count_b"] = r->count_b;
  j[prefix + ".comparison"] = r->comparison;
}

}  // namespace

std::string to_string(Ensemble e) { return e == Ensemble::ginibre ? "ginibre" : "haar"; }

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::scalar: return "scalar";
    case RunMode::matrix: return "matrix";
    case RunMode::both: return "both";
  }
  return "scalar";
}

std::string to_string(LimitKind k) {
  switch (k) {
    case LimitKind::automatic: return "auto";
    case LimitKind::ginibre_explicit: return "explicit";
    case LimitKind::betas_file: return "betas";
  }
  return "auto";
}

Ensemble parse_ensemble(const std::string& text) {
  if (text == "ginibre") return Ensemble::ginibre;
  if (text == "haar") return Ensemble::haar;
  throw ValidationError("ensemble", "expected ginibre or haar, got '" + text + "'");
}

RunMode parse_mode(const std::string& text) {
  if (text == "scalar") return RunMode::scalar;
  if (text == "matrix") return RunMode::matrix;
  if (text == "both") return RunMode::both;
  throw ValidationError("mode", "expected scalar, matrix or both, got '" + text + "'");
}

LimitKind parse_limit_kind(const std::string& text) {
  if (text == "auto") return LimitKind::automatic;
  if (text == "explicit") return LimitKind::ginibre_explicit;
  if (text == "betas") return LimitKind::betas_file;
  throw ValidationError("limit", "expected auto, explicit or betas, got '" + text + "'");
}

ProductSpec make_spec(const ExperimentConfig& config) {
  SignPattern signs = SignPattern::parse(config.signs);
  if (config.ensemble == Ensemble::ginibre) {
    if (!config.dims.empty()) throw ValidationError("dims", "only meaningful for haar");
    return GinibreProductSpec{config.n, std::move(signs)};
  }
  if (config.dims.empty()) throw ValidationError("dims", "required for haar");
  return HaarProductSpec{config.n, std::move(signs), parse_dims(config.dims)};
}

double resolve_gamma(const ExperimentConfig& config) {
  if (config.gamma == "m") return static_cast<double>(SignPattern::parse(config.signs).size());
  double g = 0.0;
  const char* first = config.gamma.data();
  const char* last = first + config.gamma.size();
  const auto res = std::from_chars(first, last, g);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ValidationError("gamma", "expected 'm' or a real number, got '" + config.gamma + "'");
  }
  if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("gamma", "must be positive");
  return g;
}

const ExperimentConfig& validate(const ExperimentConfig& config) {
  const ProductSpec spec = make_spec(config);
  validate(spec);
  resolve_gamma(config);
  if (config.replicates < 1) throw ValidationError("replicates", "must be at least 1");
  if (config.grid_points < 2) throw ValidationError("grid_points", "must be at least 2");
  if (config.mode != RunMode::scalar) {
    if (config.n > kMaxMatrixN) {
      throw ValidationError("n", "matrix mode requires n <= " + std::to_string(kMaxMatrixN));
    }
    if (signs_of(spec).size() > kMaxMatrixFactors) {
      throw ValidationError("signs", "matrix mode requires m <= " +
                                         std::to_string(kMaxMatrixFactors));
    }
  }
  if (config.limit == LimitKind::ginibre_explicit) {
    validate(GinibreLimit{config.alpha, config.beta});
  }
  if (config.limit == LimitKind::betas_file && config.betas_file.empty()) {
    throw ValidationError("betas_file", "required when limit = betas");
  }
  if (!(config.threshold > 0.0)) throw ValidationError("threshold", "must be positive");
  return config;
}

std::vector<double> read_betas(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("betas_file", "cannot open '" + path + "'");
  std::vector<double> betas;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double v = 0.0;
    if (!(fields >> v)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ValidationError("betas_file", "cannot parse line '" + line + "'");
    }
    betas.push_back(v);
  }
  if (betas.empty()) throw ValidationError("betas_file", "no coefficients in '" + path + "'");
  return betas;
}

ResolvedLimit resolve_limit(const ExperimentConfig& config) {
  validate(config);
  const double gamma = resolve_gamma(config);
  switch (config.limit) {
    case LimitKind::ginibre_explicit:
      return GinibreLimit{config.alpha, config.beta};
    case LimitKind::betas_file: {
      auto betas = read_betas(config.betas_file);
      double bound = 0.0;
      for (double b : betas) bound = std::max(bound, std::abs(b));
      return HaarLimit(std::move(betas), bound);
    }
    case LimitKind::automatic:
      break;
  }
  const ProductSpec spec = make_spec(config);
  const SignPattern& signs = signs_of(spec);
  if (const auto* g = std::get_if<GinibreProductSpec>(&spec)) {
    const double m = static_cast<double>(signs.size());
    const double beta = m / gamma;
    if (beta < kDegenerateSpread) return DegenerateLimit{beta};
    return GinibreLimit{plus_count(g->signs) / m, beta};
  }
  const auto& h = std::get<HaarProductSpec>(spec);
  const double beta1 = capital_delta(h) / gamma;
  if (beta1 < kDegenerateSpread) return DegenerateLimit{beta1};
  return haar_limit_from_spec(h, gamma, HaarLimit::kDefaultTerms);
}

std::function<double(double)> limit_cdf(const ResolvedLimit& limit) {
  if (const auto* g = std::get_if<GinibreLimit>(&limit)) {
    return [lim = *g](double y) { return ginibre_limit_cdf(lim, y); };
  }
  if (const auto* h = std::get_if<HaarLimit>(&limit)) {
    return [lim = *h](double y) { return haar_limit_cdf(lim, y); };
  }
  return [](double y) { return y >= 1.0 ? 1.0 : 0.0; };
}

std::string describe(const ResolvedLimit& limit) {
  if (const auto* g = std::get_if<GinibreLimit>(&limit)) {
    return "ginibre(alpha=" + fmt(g->alpha) + ",beta=" + fmt(g->beta) + ")";
  }
  if (const auto* h = std::get_if<HaarLimit>(&limit)) {
    return "haar(beta1=" + fmt(h->betas().front()) + ",terms=" + std::to_string(h->terms()) +
           ",bound=" + fmt(h->bound()) + ")";
  }
  return "degenerate(spread=" + fmt(std::get<DegenerateLimit>(limit).spread) + ")";
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  validate(config);

  ExperimentReport report;
  report.config = config;
  const ProductSpec spec = make_spec(config);
  report.gamma_n = resolve_gamma(config);
  const ScalingPlan plan = make_scaling_plan(spec, report.gamma_n);
  report.log_an = plan.log_an;
  const ResolvedLimit limit = resolve_limit(config);
  report.limit = describe(limit);
  report.degenerate = std::holds_alternative<DegenerateLimit>(limit);
  const auto cdf = limit_cdf(limit);
  const auto replicates = static_cast<std::size_t>(config.replicates);

  std::optional<EmpiricalCdf> scalar_ecdf;
  std::optional<EmpiricalCdf> matrix_ecdf;
  std::optional<EmpiricalCdf> angle_ecdf;

  if (config.mode != RunMode::matrix) {
    const auto spectra = sample_scalar_replicates(spec, config.seed, replicates, config.workers);
    scalar_ecdf.emplace(build_ecdf(spectra, plan));
    report.scalar_ks = ks_one_sample(*scalar_ecdf, cdf, "scalar-moduli-vs-limit");
    report.scalar_mass = mass_in(*scalar_ecdf, kDegenerateLo, kDegenerateHi);
  }

  if (config.mode != RunMode::scalar) {
    try {
      const auto samples = sample_matrix_replicates(spec, config.seed, replicates, config.workers);
      matrix_ecdf.emplace(build_ecdf(samples, plan));
      report.matrix_ks = ks_one_sample(*matrix_ecdf, cdf, "matrix-moduli-vs-limit");
      report.matrix_mass = mass_in(*matrix_ecdf, kDegenerateLo, kDegenerateHi);
      std::vector<double> angles;
      angles.reserve(matrix_ecdf->size());
      for (const auto& s : samples) angles.insert(angles.end(), s.theta.begin(), s.theta.end());
      report.angle_ks = angle_uniformity(angles);
      angle_ecdf.emplace(std::move(angles));
    } catch (const ConditioningError& e) {
      report.partial = true;
      report.failure = e.what();
    }
  }

  if (scalar_ecdf && matrix_ecdf) {
    report.path_ks = ks_two_sample(*scalar_ecdf, *matrix_ecdf, "scalar-vs-matrix-moduli");
  }

  // Degenerate limits are judged by concentration; KS against a step is not informative.
  auto moduli_ok = [&](const std::optional<KsReport>& ks, const std::optional<double>& mass) {
    if (!ks) return true;
    return report.degenerate ? *mass >= kDegenerateMass : ks->statistic <= config.threshold;
  };
  report.thresholds_met = !report.partial && moduli_ok(report.scalar_ks, report.scalar_mass) &&
                          moduli_ok(report.matrix_ks, report.matrix_mass) &&
                          (!report.angle_ks || report.angle_ks->statistic <= config.threshold) &&
                          (!report.path_ks || report.path_ks->statistic <= config.threshold);

  const fs::path dir(config.out_dir);
  fs::create_directories(dir);
  if (const auto* main_ecdf = scalar_ecdf ? &*scalar_ecdf : (matrix_ecdf ? &*matrix_ecdf : nullptr)) {
    report.cdf_path = (dir / "cdf.csv").string();
    write_text(report.cdf_path, cdf_table(*main_ecdf, cdf, config.grid_points));
  }
  if (angle_ecdf) {
    report.angles_path = (dir / "angles.csv").string();
    write_text(report.angles_path, angle_table(*angle_ecdf, config.grid_points));
  }
  report.report_path = (dir / "report.json").string();
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_text(report.report_path, report_json(report));
  return report;
}

std::string report_json(const ExperimentReport& report) {
  const auto& c = report.config;
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["config.ensemble"] = to_string(c.ensemble);
  j["config.n"] = c.n;
  j["config.signs"] = c.signs;
  j["config.dims"] = c.dims;
  j["config.gamma"] = c.gamma;
  j["config.replicates"] = c.replicates;
  j["config.mode"] = to_string(c.mode);
  j["config.limit"] = to_string(c.limit);
  if (c.limit == LimitKind::ginibre_explicit) {
    j["config.alpha"] = c.alpha;
    j["config.beta"] = c.beta;
  }
  if (c.limit == LimitKind::betas_file) j["config.betas_file"] = c.betas_file;
  j["config.grid_points"] = c.grid_points;
  j["config.assert"] = c.assert_thresholds;
  j["config.threshold"] = c.threshold;
  j["seed"] = c.seed;
  j["stream_scheme"] = "stream = 4 * replicate + path (scalar 0, matrix 1)";
  j["gamma_n"] = report.gamma_n;
  j["log_an"] = report.log_an;
  j["limit"] = report.limit;
  j["degenerate"] = report.degenerate;
  add_ks(j, "scalar.ks", report.scalar_ks);
  if (report.scalar_mass) j["scalar.mass_near_one"] = *report.scalar_mass;
  add_ks(j, "matrix.ks", report.matrix_ks);
  if (report.matrix_mass) j["matrix.mass_near_one"] = *report.matrix_mass;
  add_ks(j, "angles.ks", report.angle_ks);
  add_ks(j, "paths.ks", report.path_ks);
  j["partial"] = report.partial;
  if (report.partial) j["failure"] = report.failure;
  j["thresholds_met"] = report.thresholds_met;
  j["cdf_table"] = report.cdf_path.empty() ? "" : "cdf.csv";
  j["angle_table"] = report.angles_path.empty() ? "" : "angles.csv";
  j["runtime.wall_clock_seconds"] = report.wall_clock_seconds;
  j["runtime.workers"] = c.workers;
  j["runtime.out_dir"] = c.out_dir;
  return j.dump(2) + "\n";
}

namespace {

std::vector<Preset> make_presets() {
  std::vector<Preset> out;
  auto add = [&](std::string name, std::string summary, ExperimentConfig c) {
    out.push_back({std::move(name), std::move(summary), std::move(c)});
  };

  ExperimentConfig c;
  c.ensemble = Ensemble::ginibre;
  c.n = 500;
  c.signs = "++++";
  c.gamma = "m";
  add("ginibre-allplus", "four plain Ginibre factors, gamma = m: h ~ Unif[0,1]", c);

  c = {};
  c.ensemble = Ensemble::ginibre;
  c.n = 200;
  c.signs = "-+";
  c.gamma = "2";
  add("spherical", "A1^-1 A2, gamma = 2: P(h <= y) = y^2 / (1 + y^2)", c);

  c = {};
  c.ensemble = Ensemble::haar;
  c.n = 400;
  c.signs = "+-";
  c.dims = "401,401";
  c.gamma = "2";
  add("haar-remark4i", "truncation by one row and column: h concentrates at 1", c);

  c = {};
  c.ensemble = Ensemble::haar;
  c.n = 200;
  c.signs = "+-";
  c.dims = "400,400";
  c.gamma = "2";
  add("haar-remark4ii", "half truncations U1 U2^-1, gamma = 2: odd-only coefficients", c);

  c = {};
  c.ensemble = Ensemble::haar;
  c.n = 100;
  c.signs = "+-+-+-+-";
  c.dims = "200,200,200,200,200,200,200,200";
  c.gamma = "m";
  add("haar-remark5", "eight half truncations, balanced signs, gamma = m", c);
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = make_presets();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw ValidationError("preset", "unknown preset '" + name + "'");
}

}  // namespace prodspec
