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

#ifndef PRODSPEC_EXPERIMENT_HPP
#define PRODSPEC_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prodspec/config.hpp"
#include "prodspec/limit_laws.hpp"
#include "prodspec/stats.hpp"

#ifndef PRODSPEC_VERSION
#define PRODSPEC_VERSION "0.0.0"
#endif

namespace prodspec {

inline constexpr const char* kVersion = PRODSPEC_VERSION;

enum class Ensemble { ginibre, haar };
enum class RunMode { scalar, matrix, both };
enum class LimitKind { automatic, ginibre_explicit, betas_file };

/// Matrix-path size caps; beyond these the dense eigensolver dominates.
inline constexpr int kMaxMatrixN = 200;
inline constexpr int kMaxMatrixFactors = 8;

/// Limits whose spread parameter (m / gamma, or Delta_n / gamma) is below this
/// are treated as the point mass at 1.
inline constexpr double kDegenerateSpread = 0.05;

/// Window and mass required of a degenerate-regime run.
inline constexpr double kDegenerateLo = 0.9;
inline constexpr double kDegenerateHi = 1.1;
inline constexpr double kDegenerateMass = 0.95;

struct ExperimentConfig {
  Ensemble ensemble = Ensemble::ginibre;
  int n = 100;
  std::string signs = "-+";
  std::string dims;         // haar only, comma separated
  std::string gamma = "m";  // "m" for gamma_n = m, otherwise a positive real
  int replicates = 200;
  RunMode mode = RunMode::scalar;
  LimitKind limit = LimitKind::automatic;
  double alpha = 1.0;       // ginibre_explicit
  double beta = 1.0;        // ginibre_explicit
  std::string betas_file;   // betas_file: one coefficient per line
  std::uint64_t seed = 42;
  std::string out_dir = ".";
  int workers = 0;          // <= 0: OpenMP default
  int grid_points = 201;
  bool assert_thresholds = false;
  double threshold = 0.05;  // KS bound enforced under assert_thresholds
};

std::string to_string(Ensemble e);
std::string to_string(RunMode m);
std::string to_string(LimitKind k);
Ensemble parse_ensemble(const std::string& text);
RunMode parse_mode(const std::string& text);
LimitKind parse_limit_kind(const std::string& text);

/// Throws ValidationError on the first violated invariant.
const ExperimentConfig& validate(const ExperimentConfig& config);

ProductSpec make_spec(const ExperimentConfig& config);
double resolve_gamma(const ExperimentConfig& config);

/// Point mass at h = 1.
struct DegenerateLimit {
  double spread = 0.0;  // the parameter that fell below kDegenerateSpread
};

using ResolvedLimit = std::variant<GinibreLimit, HaarLimit, DegenerateLimit>;

ResolvedLimit resolve_limit(const ExperimentConfig& config);

/// CDF in h of the resolved limit.
std::function<double(double)> limit_cdf(const ResolvedLimit& limit);
std::string describe(const ResolvedLimit& limit);

/// One coefficient per line; blank lines and '#' comments skipped.
std::vector<double> read_betas(const std::string& path);

struct ExperimentReport {
  ExperimentConfig config;
  double gamma_n = 0.0;
  double log_an = 0.0;
  std::string limit;
  bool degenerate = false;
  std::optional<KsReport> scalar_ks;
  std::optional<KsReport> matrix_ks;
  std::optional<KsReport> angle_ks;
  std::optional<KsReport> path_ks;  // scalar vs matrix, mode=both
  std::optional<double> scalar_mass;
  std::optional<double> matrix_mass;
  bool partial = false;
  std::string failure;  // why the matrix path was abandoned
  bool thresholds_met = true;
  double wall_clock_seconds = 0.0;
  std::string cdf_path;
  std::string angles_path;
  std::string report_path;
};

/// Samples, compares and writes cdf.csv, angles.csv (matrix path) and
/// report.json under config.out_dir. A conditioning failure on the matrix
/// path leaves the scalar results intact and marks the report partial.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Flat report record. Keys under "runtime." (wall clock, workers) are the
/// only ones allowed to differ between reruns of the same config and seed.
std::string report_json(const ExperimentReport& report);

struct Preset {
  std::string name;
  std::string summary;
  ExperimentConfig config;
};

const std::vector<Preset>& presets();
/// Throws ValidationError for unknown names.
const Preset& find_preset(const std::string& name);

}  // namespace prodspec

#endif  // PRODSPEC_EXPERIMENT_HPP
