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

#include "prodspec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "prodspec/errors.hpp"

namespace prodspec {

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("EmpiricalCdf: no samples");
  for (double v : values_) {
    if (std::isnan(v)) throw DomainError("EmpiricalCdf: NaN sample");
  }
  std::sort(values_.begin(), values_.end());
}

EmpiricalCdf EmpiricalCdf::merge(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  std::vector<double> out(a.size() + b.size());
  std::merge(a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end(), out.begin());
  return EmpiricalCdf(Presorted{}, std::move(out));
}

double EmpiricalCdf::operator()(double y) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), y);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalCdf::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("EmpiricalCdf::quantile: p outside [0, 1]");
  const auto n = values_.size();
  auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  idx = idx == 0 ? 0 : idx - 1;
  return values_[std::min(idx, n - 1)];
}

std::vector<std::pair<std::string, std::string>> KsReport::to_record(const std::string& prefix) const {
  std::ostringstream stat;
  stat.precision(17);
  stat << statistic;
  std::vector<std::pair<std::string, std::string>> out{
      {prefix + "statistic", stat.str()},
      {prefix + "count_a", std::to_string(count_a)},
      {prefix + "count_b", std::to_string(count_b)},
      {prefix + "comparison", comparison},
  };
  return out;
}

double scale_log_modulus(double log_modulus, const ScalingPlan& plan) {
  return std::exp((2.0 * log_modulus - plan.log_an) / plan.gamma_n);
}

EmpiricalCdf build_ecdf(std::span<const LogSpectrum> spectra, const ScalingPlan& plan) {
  validate(plan);
  std::vector<double> values;
  std::size_t total = 0;
  for (const auto& s : spectra) total += s.log_moduli.size();
  if (total == 0) throw DomainError("build_ecdf: no samples");
  values.reserve(total);
  for (const auto& s : spectra) {
    for (double lm : s.log_moduli) values.push_back(scale_log_modulus(lm, plan));
  }
  return EmpiricalCdf(std::move(values));
}

EmpiricalCdf build_ecdf(std::span<const EigenSample> spectra, const ScalingPlan& plan) {
  validate(plan);
  std::vector<double> values;
  std::size_t total = 0;
  for (const auto& s : spectra) total += s.size();
  if (total == 0) throw DomainError("build_ecdf: no samples");
  values.reserve(total);
  for (const auto& s : spectra) {
    for (double lm : s.log_modulus) values.push_back(scale_log_modulus(lm, plan));
  }
  return EmpiricalCdf(std::move(values));
}

KsReport ks_one_sample(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf,
                       std::string comparison) {
  const auto sorted = ecdf.sorted();
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return {std::clamp(d, 0.0, 1.0), sorted.size(), 0, std::move(comparison)};
}

KsReport ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b, std::string comparison) {
  const auto xa = a.sorted();
  const auto xb = b.sorted();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    // Step past every copy of the smallest pending value in both samples.
    const double v = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == v) ++i;
    while (j < xb.size() && xb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, xa.size(), xb.size(), std::move(comparison)};
}

KsReport angle_uniformity(std::span<const double> angles) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (angles.empty()) throw DomainError("angle_uniformity: no angles");
  std::vector<double> folded;
  folded.reserve(angles.size());
  for (double a : angles) {
    if (a == two_pi) a = 0.0;
    if (!(a >= 0.0 && a < two_pi)) {
      throw DomainError("angle_uniformity: angle " + std::to_string(a) + " outside [0, 2pi)");
    }
    folded.push_back(a);
  }
  return ks_one_sample(EmpiricalCdf(std::move(folded)), [](double y) { return y / two_pi; },
                       "angles-vs-uniform");
}

MgfEstimate mgf_estimate(std::span<const double> log_samples, double t) {
  if (log_samples.size() < 2) throw DomainError("mgf_estimate: need at least two samples");
  // Welford keeps the variance accurate when the mean dominates.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double s : log_samples) {
    const double v = std::exp(t * s);
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(k);
  const double variance = m2 / (n - 1.0);
  return {mean, std::sqrt(variance / n)};
}

double mass_in(const EmpiricalCdf& ecdf, double lo, double hi) {
  const auto sorted = ecdf.sorted();
  const auto first = std::lower_bound(sorted.begin(), sorted.end(), lo);
  const auto last = std::upper_bound(sorted.begin(), sorted.end(), hi);
  if (last <= first) return 0.0;
  return static_cast<double>(last - first) / static_cast<double>(sorted.size());
}

double ks_threshold_one_sample(std::size_t n) {
  return kKolmogorov99 / std::sqrt(static_cast<double>(n)) + kFiniteNAllowance;
}

double ks_threshold_two_sample(std::size_t n_a, std::size_t n_b) {
  const double a = static_cast<double>(n_a);
  const double b = static_cast<double>(n_b);
  return kKolmogorov99 * std::sqrt((a + b) / (a * b)) + kFiniteNAllowance;
}

}  // namespace prodspec
