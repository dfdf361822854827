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

#ifndef PRODSPEC_NUMERICS_HPP
#define PRODSPEC_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "prodspec/errors.hpp"

namespace prodspec {

/// Seeded pseudo-random stream. A (seed, stream) pair always reproduces the
/// same draws; distinct stream indices give independent sequences.
///
/// Uniform, normal, Gamma and Beta variates are generated by our own code on
/// top of the raw 64-bit engine output, so a given (seed, stream) yields the
/// same variates regardless of the standard library in use.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal (Marsaglia polar method, spare value cached).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

double log_gamma(double x);
double digamma(double x);
double trigamma(double x);
double log_beta(double a, double b);

/// Gamma(shape, 1) variate (Marsaglia-Tsang; shape < 1 boosted to shape + 1
/// with a U^{1/shape} correction).
double sample_gamma(double shape, RngStream& rng);

/// Natural log of a Gamma(shape, 1) variate, without underflow for tiny shapes.
double sample_log_gamma(double shape, RngStream& rng);

/// Beta(a, b) variate, strictly inside (0, 1).
double sample_beta(double a, double b, RngStream& rng);

/// Natural log of a Beta(a, b) variate. Accurate when the draw is close to 1,
/// which is the regime of Beta(j, 1) factors with j large.
double sample_log_beta(double a, double b, RngStream& rng);

/// Bisection root of f(x) = target for nondecreasing continuous f on
/// [lo, hi]. Stops when the bracket is narrower than tol or f hits the target
/// exactly. f(lo) and f(hi) may be infinite.
template <class F>
double invert_monotone(F&& f, double target, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw DomainError("invert_monotone: tol must be positive");
  if (!(lo < hi)) throw DomainError("invert_monotone: bracket must satisfy lo < hi");
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo <= target && target <= f_hi)) {
    throw DomainError("invert_monotone: target outside [f(lo), f(hi)]");
  }
  if (f_lo == target) return lo;
  if (f_hi == target) return hi;
  // 2000 halvings exhaust any double bracket; the width test normally fires first.
  for (int iter = 0; iter < 2000 && hi - lo > tol; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double value = f(mid);
    if (value == target) return mid;
    if (value < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace prodspec

#endif  // PRODSPEC_NUMERICS_HPP
