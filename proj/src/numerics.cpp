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

#include "prodspec/numerics.hpp"

#include <cmath>
#include <string>

namespace prodspec {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x70726f64u};
  return std::mt19937_64(seq);
}

void require_positive(double x, const char* where) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(where) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// Marsaglia & Tsang (2000), shape >= 1.
double gamma_marsaglia_tsang(double shape, RngStream& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant: std::lgamma writes the global signgam
#else
  return std::lgamma(x);
#endif
}

double digamma(double x) {
  require_positive(x, "digamma");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Asymptotic series with Bernoulli coefficients B_{2k} / (2k).
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
  return acc + std::log(x) - 0.5 * inv - series;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double acc = 0.0;
  while (x < 10.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 -
                                       inv2 * (1.0 / 30.0 -
                                               inv2 * (1.0 / 42.0 -
                                                       inv2 * (1.0 / 30.0 - inv2 * (5.0 / 66.0)))))));
  return acc + series;
}

double log_beta(double a, double b) {
  require_positive(a, "log_beta");
  require_positive(b, "log_beta");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double sample_gamma(double shape, RngStream& rng) {
  require_positive(shape, "sample_gamma");
  if (shape >= 1.0) return gamma_marsaglia_tsang(shape, rng);
  const double boosted = gamma_marsaglia_tsang(shape + 1.0, rng);
  return boosted * std::pow(rng.uniform(), 1.0 / shape);
}

double sample_log_gamma(double shape, RngStream& rng) {
  require_positive(shape, "sample_log_gamma");
  if (shape >= 1.0) return std::log(gamma_marsaglia_tsang(shape, rng));
  const double boosted = gamma_marsaglia_tsang(shape + 1.0, rng);
  return std::log(boosted) + std::log(rng.uniform()) / shape;
}

double sample_beta(double a, double b, RngStream& rng) {
  require_positive(a, "sample_beta");
  require_positive(b, "sample_beta");
  for (;;) {
    const double x = sample_gamma(a, rng);
    const double y = sample_gamma(b, rng);
    const double s = x / (x + y);
    if (s > 0.0 && s < 1.0) return s;
  }
}

double sample_log_beta(double a, double b, RngStream& rng) {
  require_positive(a, "sample_log_beta");
  require_positive(b, "sample_log_beta");
  // log(X / (X + Y)) = -log1p(Y / X), computed through the log draws so that
  // tiny shapes cannot underflow X to zero.
  const double log_x = sample_log_gamma(a, rng);
  const double log_y = sample_log_gamma(b, rng);
  const double d = log_y - log_x;
  // -log(1 + e^d), stable on both tails.
  return d > 0.0 ? -(d + std::log1p(std::exp(-d))) : -std::log1p(std::exp(d));
}

}  // namespace prodspec
