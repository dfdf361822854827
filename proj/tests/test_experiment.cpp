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


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodspec/cli.hpp"
#include "prodspec/errors.hpp"
#include "prodspec/experiment.hpp"

using namespace prodspec;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("prodspec_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json report_without_runtime(const fs::path& p) {
  auto j = nlohmann::json::parse(slurp(p));
  for (auto it = j.begin(); it != j.end();) {
    it = it.key().rfind("runtime.", 0) == 0 ? j.erase(it) : std::next(it);
  }
  return j;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "prodspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

ExperimentConfig spherical(int n, int replicates, const fs::path& out) {
  ExperimentConfig c = find_preset("spherical").config;
  c.n = n;
  c.replicates = replicates;
  c.out_dir = out.string();
  return c;
}

}  // namespace

TEST_CASE("resolve_limit picks finite-n surrogates") {
  ExperimentConfig c;
  c.signs = "+---+";
  c.gamma = "m";
  const auto lim = std::get<GinibreLimit>(resolve_limit(c));
  CHECK(lim.alpha == doctest::Approx(0.4));
  CHECK(lim.beta == doctest::Approx(1.0));

  c.signs = "++++";
  const auto all_plus = std::get<GinibreLimit>(resolve_limit(c));
  CHECK(all_plus.alpha == 1.0);
  CHECK(all_plus.beta == 1.0);

  c.gamma = "4000";
  CHECK(std::holds_alternative<DegenerateLimit>(resolve_limit(c)));

  const auto& r4i = find_preset("haar-remark4i").config;
  CHECK(std::holds_alternative<DegenerateLimit>(resolve_limit(r4i)));
  const auto& r4ii = find_preset("haar-remark4ii").config;
  CHECK(std::get<HaarLimit>(resolve_limit(r4ii)).betas().front() == doctest::Approx(2.0 / 3.0));

  c = {};
  c.limit = LimitKind::ginibre_explicit;
  c.alpha = 0.25;
  c.beta = 3.0;
  const auto expl = std::get<GinibreLimit>(resolve_limit(c));
  CHECK(expl.alpha == 0.25);
  CHECK(expl.beta == 3.0);
}

TEST_CASE("betas file limit") {
  const auto dir = scratch("betas");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "betas.txt");
    f << "# linear limit\n0.5\n\n0.0  # no quadratic term\n";
  }
  CHECK(read_betas((dir / "betas.txt").string()) == std::vector<double>{0.5, 0.0});
  ExperimentConfig c;
  c.limit = LimitKind::betas_file;
  c.betas_file = (dir / "betas.txt").string();
  const auto lim = std::get<HaarLimit>(resolve_limit(c));
  CHECK(lim.bound() == 0.5);
  CHECK_THROWS_AS(read_betas((dir / "missing.txt").string()), ValidationError);
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(validate(c));
  c.mode = RunMode::matrix;
  c.n = 201;
  CHECK_THROWS_AS(validate(c), ValidationError);
  c.n = 50;
  c.signs = "+-+-+-+-+";
  CHECK_THROWS_AS(validate(c), ValidationError);
  c = {};
  c.replicates = 0;
  CHECK_THROWS_AS(validate(c), ValidationError);
  c = {};
  c.gamma = "two";
  CHECK_THROWS_AS(validate(c), ValidationError);
  c.gamma = "-1";
  CHECK_THROWS_AS(validate(c), ValidationError);
  c = {};
  c.ensemble = Ensemble::haar;
  CHECK_THROWS_AS(validate(c), ValidationError);
  c.dims = "101,101";
  CHECK_NOTHROW(validate(c));
  c.dims = "100,101";
  CHECK_THROWS_AS(validate(c), ValidationError);
  CHECK(resolve_gamma(find_preset("haar-remark5").config) == 8.0);
}

TEST_CASE("spherical run meets the KS bound") {
  const auto dir = scratch("spherical");
  const auto r = run_experiment(spherical(200, 200, dir));
  REQUIRE(r.scalar_ks);
  CHECK(r.scalar_ks->statistic <= 0.05);
  CHECK(r.thresholds_met);
  CHECK_FALSE(r.partial);
  CHECK(fs::exists(dir / "cdf.csv"));
  CHECK_FALSE(fs::exists(dir / "angles.csv"));
  const auto csv = slurp(dir / "cdf.csv");
  CHECK(csv.rfind("y,empirical,limit\n", 0) == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j["scalar.ks.statistic"].get<double>() == r.scalar_ks->statistic);
  CHECK(j["log_an"].get<double>() == 0.0);
  CHECK(j["version"] == kVersion);
}

TEST_CASE("reruns are byte-identical across worker counts") {
  std::string csv;
  nlohmann::json report;
  for (int workers : {1, 2, 8}) {
    const auto dir = scratch("workers" + std::to_string(workers));
    auto c = spherical(40, 30, dir);
    c.mode = RunMode::both;
    c.workers = workers;
    run_experiment(c);
    if (csv.empty()) {
      csv = slurp(dir / "cdf.csv");
      report = report_without_runtime(dir / "report.json");
    } else {
      CHECK(slurp(dir / "cdf.csv") == csv);
      CHECK(report_without_runtime(dir / "report.json") == report);
    }
  }
}

TEST_CASE("mode both compares the two paths") {
  const auto dir = scratch("both");
  ExperimentConfig c = spherical(30, 500, dir);
  c.mode = RunMode::both;
  const auto r = run_experiment(c);
  REQUIRE(r.path_ks);
  REQUIRE(r.angle_ks);
  CHECK(r.path_ks->statistic <= 0.03);
  CHECK(r.path_ks->count_a == 15'000);
  CHECK(r.path_ks->count_b == 15'000);
  CHECK(fs::exists(dir / "angles.csv"));
  CHECK(slurp(dir / "angles.csv").rfind("theta,empirical,uniform\n", 0) == 0);
  for (const auto* ks : {&r.scalar_ks, &r.matrix_ks, &r.angle_ks, &r.path_ks}) {
    CHECK((*ks)->statistic >= 0.0);
    CHECK((*ks)->statistic <= 1.0);
  }
}

TEST_CASE("degenerate runs are judged by concentration") {
  const auto dir = scratch("degenerate");
  ExperimentConfig c = find_preset("haar-remark4i").config;
  c.out_dir = dir.string();
  const auto r = run_experiment(c);
  CHECK(r.degenerate);
  REQUIRE(r.scalar_mass);
  CHECK(*r.scalar_mass >= kDegenerateMass);
  CHECK(r.thresholds_met);
}

TEST_CASE("presets are valid") {
  CHECK(presets().size() == 5);
  for (const auto& p : presets()) CHECK_NOTHROW(validate(p.config));
  CHECK_THROWS_AS(find_preset("nope"), ValidationError);
}

TEST_CASE("cli: presets listing") {
  const auto r = cli({"presets"});
  CHECK(r.code == kExitOk);
  for (const char* name : {"ginibre-allplus", "spherical", "haar-remark4i", "haar-remark4ii", "haar-remark5"}) {
    CHECK(r.out.find(name) != std::string::npos);
  }
}

TEST_CASE("cli: run and exit codes") {
  const auto dir = scratch("cli");
  auto ok = cli({"run", "--ensemble", "ginibre", "--n", "60", "--signs", "-+", "--gamma", "m", "--replicates", "20",
                 "--mode", "scalar", "--seed", "42", "--out", dir.string()});
  CHECK(ok.code == kExitOk);
  CHECK(fs::exists(dir / "report.json"));

  CHECK(cli({"run", "--n", "abc"}).code == kExitValidation);
  CHECK(cli({"run", "--bogus"}).code == kExitValidation);
  CHECK(cli({"run", "--signs", "+0", "--out", dir.string()}).code == kExitValidation);
  CHECK(cli({"run", "--mode", "matrix", "--n", "300", "--out", dir.string()}).code == kExitValidation);
  CHECK(cli({}).code == kExitValidation);

  // A deliberately wrong explicit limit misses the KS bound.
  const auto miss = cli({"run", "--preset", "spherical", "--n", "50", "--replicates", "20", "--limit", "explicit",
                         "--alpha", "1", "--beta", "1", "--assert", "--out", dir.string()});
  CHECK(miss.code == kExitThreshold);
  const auto hit = cli({"run", "--preset", "spherical", "--n", "50", "--replicates", "50", "--assert", "--out",
                        dir.string()});
  CHECK(hit.code == kExitOk);
}

TEST_CASE("cli: config file with flag overrides") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.toml");
    f << "ensemble = \"haar\"\nn = 30\nsigns = \"+-\"\ndims = \"45,60\"\ngamma = \"2\"\nreplicates = 10\n"
      << "out = \"" << (dir / "out").string() << "\"\n";
  }
  const auto r = cli({"run", "--config", (dir / "run.toml").string(), "--n", "25"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(j["config.ensemble"] == "haar");
  CHECK(j["config.n"] == 25);
  CHECK(j["config.dims"] == "45,60");
  CHECK(j["config.replicates"] == 10);
}

TEST_CASE("cli: same seed gives byte-identical outputs") {
  const auto a = scratch("seed_a");
  const auto b = scratch("seed_b");
  for (const auto& d : {a, b}) {
    REQUIRE(cli({"run", "--preset", "haar-remark4ii", "--n", "40", "--replicates", "25", "--seed", "9", "--out",
                 d.string()})
                .code == kExitOk);
  }
  CHECK(slurp(a / "cdf.csv") == slurp(b / "cdf.csv"));
  CHECK(report_without_runtime(a / "report.json") == report_without_runtime(b / "report.json"));
}
