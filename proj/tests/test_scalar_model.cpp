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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "prodspec/kernels.hpp"
#include "prodspec/limit_laws.hpp"
#include "prodspec/scalar_model.hpp"
#include "prodspec/stats.hpp"

using namespace prodspec;

namespace {

GinibreProductSpec gin(int n, const char* signs) { return {n, SignPattern::parse(signs)}; }
HaarProductSpec haar(int n, const char* signs, std::vector<int> dims) {
  return {n, SignPattern::parse(signs), std::move(dims)};
}

// Monte Carlo check of E[Y_j^t] against the closed form.
void check_mgf(const ProductSpec& spec, int j, double t, std::uint64_t seed, std::size_t draws) {
  const auto logs = sample_log_yj_draws(spec, j, seed, draws);
  const auto est = mgf_estimate(logs, t);
  const double want = std::exp(log_mgf_log_yj(spec, j, t));
  CHECK(std::abs(est.mean - want) <= 4.0 * est.std_error);
}

}  // namespace

TEST_CASE("alpha_jk") {
  CHECK(alpha_jk(10, 3, +1) == 3);
  CHECK(alpha_jk(10, 3, -1) == 8);
  CHECK(alpha_jk(10, 10, -1) == 1);
  CHECK(alpha_jk(10, 1, -1) == 10);
  CHECK(alpha_jk(10, 1, +1) == 1);
  CHECK_THROWS_AS(alpha_jk(10, 0, +1), DomainError);
  CHECK_THROWS_AS(alpha_jk(10, 11, -1), DomainError);
}

TEST_CASE("ginibre scalar draws") {
  check_mgf(gin(1, "+"), 1, 2.0, 1, 1'000'000);
  check_mgf(gin(5, "+"), 5, 2.0, 2, 1'000'000);
  check_mgf(gin(10, "-+"), 5, 2.0, 3, 1'000'000);

  const auto y2 = mgf_estimate(sample_log_yj_draws(gin(1, "+"), 1, 4, 1'000'000), 2.0);
  CHECK(std::abs(y2.mean - 1.0) <= 0.004);
  const auto y5 = mgf_estimate(sample_log_yj_draws(gin(5, "+"), 5, 5, 1'000'000), 2.0);
  CHECK(std::abs(y5.mean - 5.0) <= 0.01);
}

TEST_CASE("haar scalar draws") {
  const auto y2 = mgf_estimate(sample_log_yj_draws(haar(2, "+", {4}), 1, 6, 1'000'000), 2.0);
  CHECK(std::abs(y2.mean - 1.0 / 3.0) <= 0.001);

  // Opposite-sign factors of equal shape: log Y is symmetric about 0 for j = (n+1)/2.
  const auto logs = sample_log_yj_draws(haar(9, "+-", {14, 14}), 5, 7, 1'000'000);
  const auto mean = mgf_estimate(logs, 0.0);
  double sum = 0.0;
  double sq = 0.0;
  for (double v : logs) {
    sum += v;
    sq += v * v;
  }
  const double n = static_cast<double>(logs.size());
  const double m = sum / n;
  const double se = std::sqrt((sq / n - m * m) / n);
  CHECK(mean.mean == doctest::Approx(1.0));
  CHECK(std::abs(m) <= 4.0 * se);

  const auto plus_only = sample_log_yj_draws(haar(6, "++", {8, 11}), 3, 8, 100'000);
  CHECK(*std::max_element(plus_only.begin(), plus_only.end()) < 0.0);
}

TEST_CASE("sample_spectrum_scalar") {
  const ProductSpec spec = gin(3, "+-");
  RngStream a(1, 0);
  RngStream b(1, 0);
  RngStream c(1, 1);
  const auto sa = sample_spectrum_scalar(spec, a);
  const auto sb = sample_spectrum_scalar(spec, b);
  const auto sc = sample_spectrum_scalar(spec, c);
  CHECK(sa.n == 3);
  CHECK(sa.log_moduli.size() == 3);
  CHECK(sa.log_moduli == sb.log_moduli);
  CHECK(sa.log_moduli != sc.log_moduli);
  for (double v : sa.log_moduli) CHECK(std::isfinite(v));
}

TEST_CASE("log_mgf_log_yj_ginibre") {
  CHECK(log_mgf_log_yj_ginibre(gin(10, "+-"), 4, 0.0) == 0.0);
  CHECK(log_mgf_log_yj_ginibre(gin(5, "+"), 5, 2.0) == doctest::Approx(std::log(5.0)));
  CHECK(log_mgf_log_yj_ginibre(gin(10, "-"), 5, 2.0) == doctest::Approx(std::log(0.2)));
  // Open interval (-2j, 2(n+1-j)).
  CHECK_THROWS_AS(log_mgf_log_yj_ginibre(gin(10, "+-"), 3, -6.0), DomainError);
  CHECK_THROWS_AS(log_mgf_log_yj_ginibre(gin(10, "+-"), 3, 16.0), DomainError);
  CHECK_NOTHROW(log_mgf_log_yj_ginibre(gin(10, "+-"), 3, 15.9));
}

TEST_CASE("log_mgf_log_yj_haar") {
  CHECK(log_mgf_log_yj_haar(haar(2, "+", {4}), 1, 0.0) == 0.0);
  CHECK(log_mgf_log_yj_haar(haar(2, "+", {4}), 1, 2.0) == doctest::Approx(std::log(1.0 / 3.0)));
  // alpha + eps t / 2 = 0: the Beta moment diverges.
  CHECK_THROWS_AS(log_mgf_log_yj_haar(haar(2, "-", {4}), 2, 2.0), DomainError);
  CHECK_FALSE(mgf_admissible(haar(2, "-", {4}), 2, 2.0));
  CHECK(mgf_admissible(haar(2, "-", {4}), 2, 1.0));
}

TEST_CASE("MGF depends on the sign multiset only") {
  const auto a = gin(12, "++--+");
  const auto b = gin(12, "-+-++");
  const auto ha = haar(12, "++--+", {20, 20, 20, 20, 20});
  const auto hb = haar(12, "-+-++", {20, 20, 20, 20, 20});
  for (int j : {1, 4, 12}) {
    for (double t : {-1.5, 0.5, 1.7}) {
      CHECK(log_mgf_log_yj_ginibre(a, j, t) == doctest::Approx(log_mgf_log_yj_ginibre(b, j, t)));
      CHECK(log_mgf_log_yj_haar(ha, j, t) == doctest::Approx(log_mgf_log_yj_haar(hb, j, t)));
    }
  }
}

TEST_CASE("log_phi_moment") {
  CHECK(log_phi_moment(gin(3, "+"), 3.0) == doctest::Approx(std::log(0.5)));
  CHECK(log_phi_moment(gin(1, "+"), 1.0) == doctest::Approx(-std::log(2.0)));
  CHECK_THROWS_AS(log_phi_moment(gin(3, "+"), 0.0), DomainError);

  // Y_j has density proportional to y^{2j-1} phi(y).
  const std::vector<ProductSpec> specs{gin(8, "+-+"), gin(6, "--"), haar(7, "+-", {9, 15}),
                                       haar(5, "++-", {6, 8, 30})};
  for (const auto& spec : specs) {
    const int n = dimension(spec);
    for (int j = 1; j <= n; ++j) {
      for (double t : {-0.9, 0.3, 0.8}) {
        if (!mgf_admissible(spec, j, t)) continue;
        const double lhs = log_phi_moment(spec, 2.0 * j - 1.0 + t) - log_phi_moment(spec, 2.0 * j - 1.0);
        CHECK(lhs == doctest::Approx(log_mgf_log_yj(spec, j, t)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("exact_scaled_mean_ginibre") {
  for (int n : {5, 40}) {
    for (int j = 1; j <= n; j += 3) {
      CHECK(exact_scaled_mean_ginibre(gin(n, "+"), j) == doctest::Approx(static_cast<double>(j) / n));
    }
    CHECK(exact_scaled_mean_ginibre(gin(n, "+"), n) == doctest::Approx(1.0));
  }
  CHECK(std::abs(exact_scaled_mean_ginibre(gin(100, "+-"), 50) - 1.0) <= 0.05);
}

TEST_CASE("scaled variance decays like 1/n") {
  const char* patterns[] = {"+-", "++-", "+--+"};
  for (const char* p : patterns) {
    auto worst = [&](int n) {
      double w = 0.0;
      for (int j = n / 5; j <= 4 * n / 5; ++j) {
        w = std::max(w, exact_scaled_variance_ginibre(gin(n, p), j));
      }
      return w;
    };
    const double v100 = worst(100);
    const double v200 = worst(200);
    const double v400 = worst(400);
    CHECK(v100 / v200 == doctest::Approx(2.0).epsilon(0.15));
    CHECK(v200 / v400 == doctest::Approx(2.0).epsilon(0.15));
  }
}

TEST_CASE("mean_log_yj agrees with the digamma sum") {
  const auto spec = gin(30, "+--");
  for (int j : {1, 10, 30}) {
    double want = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int eps = spec.signs[k];
      want += 0.5 * eps * digamma(alpha_jk(30, j, eps));
    }
    CHECK(mean_log_yj(spec, j) == doctest::Approx(want).epsilon(1e-7));
  }
}

TEST_CASE("haar mean of log Y_j tracks g_n") {
  // |E log Y_j - log a_n / 2 - g_n(j/n) / 2| <= C Delta_n / n, C fixed across n.
  auto worst_scaled = [](int n) {
    const HaarProductSpec spec{n, SignPattern::parse("+-+"), {2 * n, 3 * n, 3 * n / 2}};
    const double la = log_an_haar(spec);
    double w = 0.0;
    for (int j = n / 10; j <= 9 * n / 10; j += std::max(1, n / 40)) {
      const double x = static_cast<double>(j) / n;
      const double err = std::abs(mean_log_yj(spec, j) - 0.5 * la - 0.5 * gn_eval(spec, x).value);
      w = std::max(w, err);
    }
    return w;
  };
  const double e100 = worst_scaled(100);
  const double e200 = worst_scaled(200);
  const double e400 = worst_scaled(400);
  CHECK(e100 / e200 > 1.6);
  CHECK(e200 / e400 > 1.6);
}

TEST_CASE("MGF identities by simulation") {
  check_mgf(gin(20, "+-+"), 7, -1.3, 10, 200'000);
  check_mgf(gin(20, "---"), 20, 0.9, 11, 200'000);
  check_mgf(haar(15, "+-", {16, 40}), 1, 0.8, 12, 200'000);
  check_mgf(haar(15, "-+-", {20, 17, 30}), 15, -0.7, 13, 200'000);
}
