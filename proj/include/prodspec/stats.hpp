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

#ifndef PRODSPEC_STATS_HPP
#define PRODSPEC_STATS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prodspec/config.hpp"
#include "prodspec/matrix_model.hpp"
#include "prodspec/scalar_model.hpp"

namespace prodspec {

/// 0.99 quantile of the limiting Kolmogorov distribution.
inline constexpr double kKolmogorov99 = 1.6276;

/// Allowance added to the null quantile for finite-n bias of asymptotic laws.
inline constexpr double kFiniteNAllowance = 0.02;

class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> values);

  /// Pooled ECDF of both inputs. Associative and commutative.
  static EmpiricalCdf merge(const EmpiricalCdf& a, const EmpiricalCdf& b);

  /// Fraction of samples <= y.
  double operator()(double y) const;

  /// Sample quantile (lower empirical inverse) at probability p in [0, 1].
  double quantile(double p) const;

  std::span<const double> sorted() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  struct Presorted {};
  EmpiricalCdf(Presorted, std::vector<double> values) : values_(std::move(values)) {}

  std::vector<double> values_;
};

struct KsReport {
  double statistic = 0.0;
  std::size_t count_a = 0;
  std::size_t count_b = 0;  // zero for one-sample comparisons
  std::string comparison;

  /// Flat key/value form, keys prefixed by `prefix`.
  std::vector<std::pair<std::string, std::string>> to_record(const std::string& prefix) const;
};

/// exp((2 log r - log a_n) / gamma_n); r^2 and a_n are never formed.
double scale_log_modulus(double log_modulus, const ScalingPlan& plan);

/// Pooled h-values of every (replicate, j) entry.
EmpiricalCdf build_ecdf(std::span<const LogSpectrum> spectra, const ScalingPlan& plan);
EmpiricalCdf build_ecdf(std::span<const EigenSample> spectra, const ScalingPlan& plan);

/// sup |F_N - F|, with F evaluated only at the sample points.
KsReport ks_one_sample(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf,
                       std::string comparison = "one-sample");

KsReport ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b,
                       std::string comparison = "two-sample");

/// KS distance of the angles to Unif[0, 2pi). Angles equal to 2pi are folded to 0.
KsReport angle_uniformity(std::span<const double> angles);

struct MgfEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean and standard error of exp(t * s) over the log-samples s.
MgfEstimate mgf_estimate(std::span<const double> log_samples, double t);

/// Fraction of samples in the closed interval [lo, hi].
double mass_in(const EmpiricalCdf& ecdf, double lo, double hi);

/// 0.99 null quantile plus the finite-n allowance.
double ks_threshold_one_sample(std::size_t n);
double ks_threshold_two_sample(std::size_t n_a, std::size_t n_b);

}  // namespace prodspec

#endif  // PRODSPEC_STATS_HPP
