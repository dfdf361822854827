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

#include "prodspec/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "prodspec/errors.hpp"
#include "prodspec/numerics.hpp"

namespace prodspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit_open(double x, const char* where) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError(std::string(where) + ": x must lie in (0, 1), got " + std::to_string(x));
  }
}

// log G_alpha(x), extended to -inf at 0 and +inf at 1 for 0 < alpha < 1.
double log_g_alpha(double alpha, double x) {
  double acc = 0.0;
  if (alpha != 0.0) acc += alpha * std::log(x);
  if (alpha != 1.0) acc -= (1.0 - alpha) * std::log1p(-x);
  return acc;
}

// G*_alpha evaluated at e^{log_y}.
double g_star_log(double alpha, double log_y) {
  if (alpha == 1.0) return log_y >= 0.0 ? 1.0 : std::exp(log_y);
  if (alpha == 0.0) return log_y <= 0.0 ? 0.0 : -std::expm1(-log_y);
  if (log_y == -kInf) return 0.0;
  if (log_y == kInf) return 1.0;
  return invert_monotone([alpha](double x) { return log_g_alpha(alpha, x); }, log_y, 0.0, 1.0,
                         1e-15);
}

// Ratio n / (2 n_k - n) for each factor.
std::vector<double> truncation_ratios(const HaarProductSpec& spec) {
  std::vector<double> c;
  c.reserve(spec.dims.size());
  for (int nk : spec.dims) {
    const int denom = 2 * nk - spec.n;
    if (denom <= 0) throw ValidationError("dims", "2*n_k - n must be positive");
    c.push_back(static_cast<double>(spec.n) / denom);
  }
  return c;
}

// (1/j) sum_k (-e_k)^{j-1} (1 - c_k^j).
double signed_ratio_sum(const SignPattern& signs, const std::vector<double>& ratios, int j) {
  double acc = 0.0;
  for (int k = 0; k < signs.size(); ++k) {
    const double c = ratios[static_cast<std::size_t>(k)];
    const double one_minus_pow = c > 0.0 ? -std::expm1(j * std::log(c)) : 1.0;
    const int weight = ((j - 1) % 2 == 0) ? 1 : -signs[k];
    acc += weight * one_minus_pow;
  }
  return acc / j;
}

double parity_coefficient(const LogTail& tail, int j) { return (j % 2 == 1) ? tail.odd : tail.even; }

}  // namespace

const GinibreLimit& validate(const GinibreLimit& lim) {
  if (!(lim.alpha >= 0.0 && lim.alpha <= 1.0)) throw ValidationError("alpha", "must lie in [0, 1]");
  if (!(lim.beta > 0.0) || !std::isfinite(lim.beta)) {
    throw ValidationError("beta", "must be positive and finite");
  }
  return lim;
}

double g_alpha(double alpha, double x) {
  require_unit_open(x, "g_alpha");
  return std::exp(log_g_alpha(alpha, x));
}

double g_alpha_derivative(double alpha, double x) {
  require_unit_open(x, "g_alpha_derivative");
  return g_alpha(alpha, x) * (alpha / x + (1.0 - alpha) / (1.0 - x));
}

double g_star(double alpha, double y) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("g_star: alpha must lie in [0, 1]");
  if (std::isnan(y)) throw DomainError("g_star: y is NaN");
  if (y <= 0.0) return 0.0;
  return g_star_log(alpha, std::log(y));
}

double ginibre_limit_cdf(const GinibreLimit& lim, double y) {
  validate(lim);
  if (!(y > 0.0)) throw DomainError("ginibre_limit_cdf: y must be positive");
  return g_star_log(lim.alpha, std::log(y) / lim.beta);
}

double ginibre_limit_density(const GinibreLimit& lim, double y) {
  validate(lim);
  if (!(y > 0.0)) throw DomainError("ginibre_limit_density: y must be positive");
  const double log_u = std::log(y) / lim.beta;
  // Support of G*_alpha: u in (G(0+), G(1-)).
  if (lim.alpha == 1.0 && log_u >= 0.0) return 0.0;
  if (lim.alpha == 0.0 && log_u <= 0.0) return 0.0;
  const double x = g_star_log(lim.alpha, log_u);
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  // d/dy G*(y^{1/beta}) = (1/beta) y^{1/beta - 1} / G'(x) with G(x) = y^{1/beta},
  // and G'(x) = G(x) (alpha/x + (1-alpha)/(1-x)).
  const double log_slope = lim.alpha / x + (1.0 - lim.alpha) / (1.0 - x);
  return 1.0 / (lim.beta * y * log_slope);
}

double spherical_product_density(int k, double r) {
  if (k < 1) throw DomainError("spherical_product_density: k must be >= 1");
  if (!(r > 0.0)) throw DomainError("spherical_product_density: r must be positive");
  // The radial exponent is 2/k: |z|^{1/k} has the k = 1 law, whose radial CDF
  // is s^2 / (1 + s^2).
  const double s = std::pow(r, 2.0 / k);
  // s / r^2 written as one power so that r -> infinity stays finite.
  return std::pow(r, 2.0 / k - 2.0) / (k * std::numbers::pi * (1.0 + s) * (1.0 + s));
}

double delta_nj(const HaarProductSpec& spec, int j) {
  if (j < 1) throw DomainError("delta_nj: j must be >= 1");
  return signed_ratio_sum(spec.signs, truncation_ratios(spec), j);
}

double capital_delta(const HaarProductSpec& spec) {
  double acc = 0.0;
  for (int nk : spec.dims) {
    const double excess = 2.0 * (nk - spec.n);
    acc += excess / (excess + spec.n);
  }
  return acc;
}

SeriesValue gn_eval(const HaarProductSpec& spec, double x, GnMode mode, int terms) {
  require_unit_open(x, "gn_eval");
  const double d = x - 0.5;
  if (mode == GnMode::closed) {
    const std::vector<double> c = truncation_ratios(spec);
    double acc = 0.0;
    for (int k = 0; k < spec.signs.size(); ++k) {
      const int e = spec.signs[k];
      acc += e * std::log1p(2.0 * e * d);
      acc -= e * std::log1p(2.0 * c[static_cast<std::size_t>(k)] * e * d);
    }
    return {acc, 0.0};
  }
  if (terms < 1) throw DomainError("gn_eval: series mode needs terms >= 1");
  const double u = 2.0 * d;
  if (!(std::abs(d) <= 0.5 - 1e-6)) throw DomainError("gn_eval: series mode needs |x - 1/2| <= 0.5 - 1e-6");
  double acc = 0.0;
  double power = 1.0;
  for (int j = 1; j <= terms; ++j) {
    power *= u;
    acc += delta_nj(spec, j) * power;
  }
  const double au = std::abs(u);
  return {acc, capital_delta(spec) * std::pow(au, terms + 1) / (1.0 - au)};
}

double gn_derivative(const HaarProductSpec& spec, double x) {
  require_unit_open(x, "gn_derivative");
  const double d = x - 0.5;
  const std::vector<double> c = truncation_ratios(spec);
  double acc = 0.0;
  for (int k = 0; k < spec.signs.size(); ++k) {
    const int e = spec.signs[k];
    const double ck = c[static_cast<std::size_t>(k)];
    acc += 2.0 / (1.0 + 2.0 * e * d);
    acc -= 2.0 * ck / (1.0 + 2.0 * ck * e * d);
  }
  return acc;
}

// --- HaarLimit -------------------------------------------------------------

namespace {

// Sum over the stored prefix of (beta_j - tail_j) u^j; tail_j = 0 without a model.
double prefix_sum(const HaarLimit& lim, double u) {
  const auto& betas = lim.betas();
  double acc = 0.0;
  double power = 1.0;
  for (int j = 1; j <= lim.terms(); ++j) {
    power *= u;
    double coeff = betas[static_cast<std::size_t>(j - 1)];
    if (lim.tail()) coeff -= parity_coefficient(*lim.tail(), j) / j;
    acc += coeff * power;
  }
  return acc;
}

// d/du of prefix_sum.
double prefix_slope(const HaarLimit& lim, double u) {
  const auto& betas = lim.betas();
  double acc = 0.0;
  double power = 1.0;
  for (int j = 1; j <= lim.terms(); ++j) {
    double coeff = betas[static_cast<std::size_t>(j - 1)];
    if (lim.tail()) coeff -= parity_coefficient(*lim.tail(), j) / j;
    acc += j * coeff * power;
    power *= u;
  }
  return acc;
}

SeriesValue evaluate_f(const HaarLimit& lim, double x) {
  const double u = 2.0 * x - 1.0;
  const double au = std::abs(u);
  const int terms = lim.terms();
  if (!lim.tail()) {
    const double err = au < 1.0 ? lim.bound() * std::pow(au, terms + 1) / (1.0 - au) : kInf;
    return {prefix_sum(lim, u), err};
  }
  const LogTail& t = *lim.tail();
  // sum_j c_parity(j) u^j / j = (odd - even)/2 log(1+u) - (odd + even)/2 log(1-u).
  double value = prefix_sum(lim, u);
  const double lower = 0.5 * (t.odd - t.even);
  const double upper = 0.5 * (t.odd + t.even);
  if (lower != 0.0) value += lower * std::log1p(u);
  if (upper != 0.0) value -= upper * std::log1p(-u);
  const double ru = t.rho * au;
  const double err = t.scale * std::pow(ru, terms + 1) / ((terms + 1) * (1.0 - ru));
  return {value, err};
}

double evaluate_f_slope(const HaarLimit& lim, double x) {
  const double u = 2.0 * x - 1.0;
  double du = prefix_slope(lim, u);
  if (lim.tail()) {
    const LogTail& t = *lim.tail();
    const double lower = 0.5 * (t.odd - t.even);
    const double upper = 0.5 * (t.odd + t.even);
    if (lower != 0.0) du += lower / (1.0 + u);
    if (upper != 0.0) du += upper / (1.0 - u);
  }
  return 2.0 * du;
}

// Largest |u| reachable from 0 along `direction` while the partial sum keeps
// a positive slope, capped at 1 - 2e-8 (x within 1e-8 of the endpoint).
double increasing_reach(const HaarLimit& lim, double direction) {
  constexpr double kCap = 1.0 - 2e-8;
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(0.9 * i / 400.0);
  for (double s = 1.0; s <= 7.7; s += 0.02) grid.push_back(1.0 - std::pow(10.0, -s));
  grid.push_back(kCap);
  std::sort(grid.begin(), grid.end());
  double reach = 0.0;
  for (double u : grid) {
    if (u > kCap) break;
    const double x = 0.5 * (1.0 + direction * u);
    if (!(evaluate_f_slope(lim, x) > 0.0)) break;
    reach = u;
  }
  return reach;
}

}  // namespace

HaarLimit::HaarLimit(std::vector<double> betas, double bound, std::optional<LogTail> tail)
    : betas_(std::move(betas)), bound_(bound), tail_(tail) {
  if (betas_.empty()) throw ValidationError("betas", "at least one coefficient is required");
  for (double b : betas_) {
    if (!std::isfinite(b)) throw ValidationError("betas", "coefficients must be finite");
  }
  if (!(betas_.front() > 0.0)) throw ValidationError("betas", "beta_1 must be positive");
  if (!(bound_ >= 0.0) || !std::isfinite(bound_)) {
    throw ValidationError("bound", "must be finite and nonnegative");
  }
  if (tail_) {
    if (!(tail_->rho >= 0.0 && tail_->rho < 1.0)) throw ValidationError("tail", "rho must lie in [0, 1)");
    if (!(tail_->scale >= 0.0)) throw ValidationError("tail", "scale must be nonnegative");
    if (!(tail_->odd - tail_->even >= 0.0 && tail_->odd + tail_->even >= 0.0)) {
      throw ValidationError("tail", "log coefficients must keep f increasing at the endpoints");
    }
    x_lo_ = 0.0;
    x_hi_ = 1.0;
  } else {
    x_lo_ = 0.5 * (1.0 - increasing_reach(*this, -1.0));
    x_hi_ = 0.5 * (1.0 + increasing_reach(*this, 1.0));
  }
  f_lo_ = evaluate_f(*this, x_lo_).value;
  f_hi_ = evaluate_f(*this, x_hi_).value;
}

SeriesValue f_beta_eval(const HaarLimit& lim, double x, double tolerance) {
  require_unit_open(x, "f_beta_eval");
  const SeriesValue out = evaluate_f(lim, x);
  if (out.error_bound > tolerance) {
    throw AccuracyError("f_beta_eval: truncation bound " + std::to_string(out.error_bound) +
                            " exceeds tolerance at x=" + std::to_string(x),
                        out.error_bound);
  }
  return out;
}

double f_beta_derivative(const HaarLimit& lim, double x) {
  require_unit_open(x, "f_beta_derivative");
  return evaluate_f_slope(lim, x);
}

namespace {

// With a log tail the support is unbounded and x crowds against 0 or 1, so
// the tail model is inverted in w = logit(x); 1 - u = 2 / (1 + e^w) and
// 1 + u = 2 / (1 + e^-w) stay representable far into both tails.
constexpr double kLogitReach = 700.0;

double softplus(double w) { return w > 0.0 ? w + std::log1p(std::exp(-w)) : std::log1p(std::exp(w)); }

double f_of_logit(const HaarLimit& lim, double w) {
  const LogTail& t = *lim.tail();
  const double u = std::tanh(0.5 * w);
  double value = prefix_sum(lim, u);
  const double lower = 0.5 * (t.odd - t.even);
  const double upper = 0.5 * (t.odd + t.even);
  if (lower != 0.0) value += lower * (std::numbers::ln2 - softplus(-w));
  if (upper != 0.0) value -= upper * (std::numbers::ln2 - softplus(w));
  return value;
}

// dx/dy at y = f(x(w)).
double density_at_logit(const HaarLimit& lim, double w) {
  const LogTail& t = *lim.tail();
  const double u = std::tanh(0.5 * w);
  const double one_minus = 2.0 / (1.0 + std::exp(w));
  const double one_plus = 2.0 / (1.0 + std::exp(-w));
  const double lower = 0.5 * (t.odd - t.even);
  const double upper = 0.5 * (t.odd + t.even);
  // df/dw = f'(x) x (1 - x), with x (1 - x) = (1 + u)(1 - u) / 4.
  const double dfdw = 0.5 * (prefix_slope(lim, u) * one_plus * one_minus + lower * one_minus + upper * one_plus);
  if (!(dfdw > 0.0)) return 0.0;
  return 0.25 * one_plus * one_minus / dfdw;
}

double invert_logit(const HaarLimit& lim, double y) {
  return invert_monotone([&lim](double w) { return f_of_logit(lim, w); }, y, -kLogitReach, kLogitReach, 1e-12);
}

double invert_f(const HaarLimit& lim, double y) {
  return invert_monotone([&lim](double x) { return evaluate_f(lim, x).value; }, y, lim.x_lo(),
                         lim.x_hi(), 1e-13);
}

}  // namespace

double f_star_cdf(const HaarLimit& lim, double y) {
  if (std::isnan(y)) throw DomainError("f_star_cdf: y is NaN");
  if (y <= lim.f_lo()) return 0.0;
  if (y >= lim.f_hi()) return 1.0;
  if (lim.tail()) {
    if (y <= f_of_logit(lim, -kLogitReach)) return 0.0;
    if (y >= f_of_logit(lim, kLogitReach)) return 1.0;
    return 1.0 / (1.0 + std::exp(-invert_logit(lim, y)));
  }
  return invert_f(lim, y);
}

double f_star_density(const HaarLimit& lim, double y) {
  if (std::isnan(y)) throw DomainError("f_star_density: y is NaN");
  if (!(y > lim.f_lo() && y < lim.f_hi())) return 0.0;
  if (lim.tail()) {
    if (!(y > f_of_logit(lim, -kLogitReach) && y < f_of_logit(lim, kLogitReach))) return 0.0;
    return density_at_logit(lim, invert_logit(lim, y));
  }
  const double x = invert_f(lim, y);
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  const double slope = evaluate_f_slope(lim, x);
  return slope > 0.0 ? 1.0 / slope : 0.0;
}

double haar_limit_cdf(const HaarLimit& lim, double y) {
  if (!(y > 0.0)) throw DomainError("haar_limit_cdf: y must be positive");
  return f_star_cdf(lim, std::log(y));
}

double haar_limit_density(const HaarLimit& lim, double y) {
  if (!(y > 0.0)) throw DomainError("haar_limit_density: y must be positive");
  return f_star_density(lim, std::log(y)) / y;
}

HaarLimit haar_limit_from_spec(const HaarProductSpec& spec, double gamma_n, int terms) {
  validate(spec);
  if (terms < 1) throw DomainError("haar_limit_from_spec: terms must be >= 1");
  if (!(gamma_n > 0.0)) throw ValidationError("gamma", "gamma_n must be positive");
  std::vector<double> betas;
  betas.reserve(static_cast<std::size_t>(terms));
  for (int j = 1; j <= terms; ++j) betas.push_back(delta_nj(spec, j) / gamma_n);
  if (!(betas.front() > 0.0)) {
    throw ValidationError("betas", "beta_1 = Delta_n / gamma_n must be positive");
  }
  const std::vector<double> c = truncation_ratios(spec);
  const int m = spec.signs.size();
  const int p = plus_count(spec.signs);
  LogTail tail;
  tail.odd = m / gamma_n;
  tail.even = (m - 2 * p) / gamma_n;
  tail.rho = *std::max_element(c.begin(), c.end());
  tail.scale = m / gamma_n;
  return HaarLimit(std::move(betas), capital_delta(spec) / gamma_n, tail);
}

HaarLimit haar_limit_fixed_m(const SignPattern& signs, const std::vector<double>& ratio_limits,
                             double gamma_n, int terms) {
  validate(signs);
  if (ratio_limits.size() != signs.values.size()) {
    throw ValidationError("alphas", "need one limiting ratio n/n_k per factor");
  }
  if (!(gamma_n > 0.0)) throw ValidationError("gamma", "gamma_n must be positive");
  std::vector<double> c;
  double delta = 0.0;
  for (double a : ratio_limits) {
    if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("alphas", "limiting ratios must lie in [0, 1]");
    c.push_back(a / (2.0 - a));
    delta += 1.0 - c.back();
  }
  std::vector<double> betas;
  for (int j = 1; j <= terms; ++j) betas.push_back(signed_ratio_sum(signs, c, j) / gamma_n);
  // Factors with ratio 1 contribute nothing to any coefficient; the tail
  // model only sees the others.
  int active = 0;
  int active_plus = 0;
  LogTail tail;
  for (int k = 0; k < signs.size(); ++k) {
    const double ck = c[static_cast<std::size_t>(k)];
    if (ck >= 1.0) continue;
    ++active;
    active_plus += signs[k] > 0;
    tail.rho = std::max(tail.rho, ck);
  }
  if (active == 0) throw ValidationError("alphas", "all ratios equal to 1 give the degenerate limit");
  tail.odd = active / gamma_n;
  tail.even = (active - 2 * active_plus) / gamma_n;
  tail.scale = active / gamma_n;
  return HaarLimit(std::move(betas), delta / gamma_n, tail);
}

HaarLimit haar_limit_growing_m(double alpha, double sigma, int terms) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ValidationError("alpha", "must lie in [0, 1)");
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw ValidationError("sigma", "must lie in [0, 1]");
  const double c = alpha / (2.0 - alpha);
  std::vector<double> betas;
  for (int j = 1; j <= terms; ++j) {
    const double magnitude = (c > 0.0 ? -std::expm1(j * std::log(c)) : 1.0) / j;
    betas.push_back(j % 2 == 1 ? magnitude : (1.0 - 2.0 * sigma) * magnitude);
  }
  LogTail tail{1.0, 1.0 - 2.0 * sigma, c, 1.0};
  return HaarLimit(std::move(betas), 1.0 - c, tail);
}

}  // namespace prodspec
