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

#include <cmath>
#include <numbers>
#include <vector>

#include "prodspec/errors.hpp"
#include "prodspec/limit_laws.hpp"
#include "prodspec/numerics.hpp"
#include "prodspec/stats.hpp"

using namespace prodspec;
using std::numbers::pi;

namespace {

double uniform_cdf(double y) { return y <= 0 ? 0.0 : (y >= 1 ? 1.0 : y); }

std::vector<double> uniform_draws(std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> out(n);
  for (auto& v : out) v = rng.uniform();
  return out;
}

}  // namespace

TEST_CASE("EmpiricalCdf") {
  const EmpiricalCdf e({3.0, 1.0, 2.0, 2.0});
  CHECK(e.size() == 4);
  CHECK(e(0.5) == 0.0);
  CHECK(e(2.0) == 0.75);
  CHECK(e(std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(e.quantile(0.0) == 1.0);
  CHECK(e.quantile(0.5) == 2.0);
  CHECK(e.quantile(1.0) == 3.0);
  CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(EmpiricalCdf({1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(e.quantile(1.5), DomainError);
}

TEST_CASE("merging ECDFs is order-insensitive") {
  const EmpiricalCdf a(uniform_draws(100, 1));
  const EmpiricalCdf b(uniform_draws(70, 2));
  const EmpiricalCdf c(uniform_draws(30, 3));
  const auto ab_c = EmpiricalCdf::merge(EmpiricalCdf::merge(a, b), c);
  const auto c_ba = EmpiricalCdf::merge(c, EmpiricalCdf::merge(b, a));
  CHECK(std::vector<double>(ab_c.sorted().begin(), ab_c.sorted().end()) ==
        std::vector<double>(c_ba.sorted().begin(), c_ba.sorted().end()));
  auto pooled = uniform_draws(100, 1);
  for (double v : uniform_draws(70, 2)) pooled.push_back(v);
  for (double v : uniform_draws(30, 3)) pooled.push_back(v);
  const EmpiricalCdf direct(pooled);
  CHECK(std::vector<double>(direct.sorted().begin(), direct.sorted().end()) ==
        std::vector<double>(ab_c.sorted().begin(), ab_c.sorted().end()));
}

TEST_CASE("scale_log_modulus") {
  const ScalingPlan plan{2.0, 0.7};
  CHECK(scale_log_modulus(0.35, plan) == doctest::Approx(1.0));
  CHECK(scale_log_modulus(std::log(2.0), {2.0, 0.0}) == doctest::Approx(2.0));
  double prev = 0.0;
  for (double lm = -50.0; lm < 50.0; lm += 0.5) {
    const double h = scale_log_modulus(lm, {3.0, 4.0});
    CHECK(h > prev);
    prev = h;
  }
  // Moduli far outside double range still scale.
  CHECK(std::isfinite(scale_log_modulus(2000.0, {400.0, 3000.0})));
}

TEST_CASE("build_ecdf") {
  const std::vector<LogSpectrum> one{{2, {0.0, std::log(2.0)}}};
  const auto e = build_ecdf(one, {1.0, 0.0});
  REQUIRE(e.size() == 2);
  CHECK(e.sorted()[0] == doctest::Approx(1.0));
  CHECK(e.sorted()[1] == doctest::Approx(4.0));
  CHECK(e(1e300) == 1.0);
  CHECK_THROWS_AS(build_ecdf(std::vector<LogSpectrum>{}, {1.0, 0.0}), DomainError);

  const std::vector<EigenSample> eig{{{0.1, 0.2}, {0.0, std::log(2.0)}}};
  const auto ee = build_ecdf(eig, {1.0, 0.0});
  CHECK(ee.sorted()[1] == doctest::Approx(4.0));
}

TEST_CASE("scaling preserves sample order") {
  const std::vector<LogSpectrum> s{{5, {0.3, -2.0, 7.5, 1.0, -0.5}}};
  const auto e = build_ecdf(s, {1.7, -0.4});
  const std::vector<double> order{-2.0, -0.5, 0.3, 1.0, 7.5};
  for (std::size_t i = 0; i < order.size(); ++i) {
    CHECK(e.sorted()[i] == doctest::Approx(scale_log_modulus(order[i], {1.7, -0.4})));
  }
}

TEST_CASE("ks_one_sample") {
  CHECK(ks_one_sample(EmpiricalCdf({0.5}), uniform_cdf).statistic == doctest::Approx(0.5));
  for (std::size_t n : {1u, 10u, 1000u}) {
    std::vector<double> q;
    for (std::size_t i = 1; i <= n; ++i) q.push_back((i - 0.5) / n);
    CHECK(ks_one_sample(EmpiricalCdf(q), uniform_cdf).statistic == doctest::Approx(0.5 / n));
  }
  const auto big = ks_one_sample(EmpiricalCdf(uniform_draws(100'000, 9)), uniform_cdf);
  CHECK(big.statistic <= 0.01);
  CHECK(big.count_a == 100'000);
  CHECK(big.count_b == 0);
}

TEST_CASE("ks_one_sample is invariant under increasing transforms") {
  const auto u = uniform_draws(5000, 4);
  std::vector<double> transformed;
  for (double v : u) transformed.push_back(std::log(v / (1 - v)));
  const auto a = ks_one_sample(EmpiricalCdf(u), [](double y) { return std::pow(y, 1.1); });
  const auto b = ks_one_sample(EmpiricalCdf(transformed), [](double z) {
    const double y = 1 / (1 + std::exp(-z));
    return std::pow(y, 1.1);
  });
  CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-10));
}

TEST_CASE("ks_two_sample") {
  const EmpiricalCdf a(uniform_draws(10'000, 5));
  const EmpiricalCdf b(uniform_draws(10'000, 6));
  CHECK(ks_two_sample(a, a).statistic == 0.0);
  CHECK(ks_two_sample(EmpiricalCdf({1.0, 2.0}), EmpiricalCdf({3.0, 4.0})).statistic == 1.0);
  CHECK(ks_two_sample(a, b).statistic <= 0.035);
  CHECK(ks_two_sample(a, b).statistic == ks_two_sample(b, a).statistic);
  // Ties across samples are stepped over together.
  CHECK(ks_two_sample(EmpiricalCdf({1.0, 1.0, 2.0}), EmpiricalCdf({1.0, 2.0, 2.0})).statistic ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("angle_uniformity") {
  const std::size_t n = 400;
  std::vector<double> grid;
  for (std::size_t i = 1; i <= n; ++i) grid.push_back((i - 0.5) * 2 * pi / n);
  CHECK(angle_uniformity(grid).statistic == doctest::Approx(0.5 / n));
  const std::vector<double> zeros(n, 0.0);
  CHECK(angle_uniformity(zeros).statistic >= 1.0 - 1.0 / n);
  const std::vector<double> wrapped{2 * pi, 1.0};
  CHECK_NOTHROW(angle_uniformity(wrapped));
  const std::vector<double> bad{-0.1};
  CHECK_THROWS_AS(angle_uniformity(bad), DomainError);
  const std::vector<double> too_big{7.0};
  CHECK_THROWS_AS(angle_uniformity(too_big), DomainError);
}

TEST_CASE("mgf_estimate") {
  const std::vector<double> some{0.1, -0.3, 2.0};
  const auto zero = mgf_estimate(some, 0.0);
  CHECK(zero.mean == 1.0);
  CHECK(zero.std_error == 0.0);
  const std::vector<double> ln2(10, std::log(2.0));
  const auto two = mgf_estimate(ln2, 1.0);
  CHECK(two.mean == doctest::Approx(2.0));
  CHECK(two.std_error == doctest::Approx(0.0));

  // log of Exp(1) draws: E[Y] = 1.
  RngStream rng(12, 0);
  std::vector<double> logs(100'000);
  for (auto& v : logs) v = std::log(-std::log(rng.uniform()));
  const auto e = mgf_estimate(logs, 1.0);
  CHECK(std::abs(e.mean - 1.0) <= 4 * e.std_error);
  CHECK_THROWS_AS(mgf_estimate(std::vector<double>{1.0}, 1.0), DomainError);
}

TEST_CASE("mass_in and thresholds") {
  const EmpiricalCdf e({0.5, 0.9, 1.0, 1.1, 1.5});
  CHECK(mass_in(e, 0.9, 1.1) == doctest::Approx(0.6));
  CHECK(mass_in(e, 2.0, 3.0) == 0.0);
  CHECK(ks_threshold_one_sample(10'000) == doctest::Approx(0.016276 + 0.02));
  CHECK(ks_threshold_two_sample(100, 100) == doctest::Approx(1.6276 * std::sqrt(0.02) + 0.02));
}

TEST_CASE("KsReport record") {
  const KsReport r{0.25, 10, 0, "x"};
  const auto rec = r.to_record("s.");
  REQUIRE(rec.size() == 4);
  CHECK(rec[0].first == "s.statistic");
  CHECK(rec[0].second == "0.25");
  CHECK(rec[3].second == "x");
}
