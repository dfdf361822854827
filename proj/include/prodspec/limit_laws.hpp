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

#ifndef PRODSPEC_LIMIT_LAWS_HPP
#define PRODSPEC_LIMIT_LAWS_HPP

#include <limits>
#include <optional>
#include <vector>

#include "prodspec/config.hpp"

// Closed-form limiting laws for the scaled moduli h = (|z|^2 / a_n)^{1/gamma_n}.
//
// Ginibre products: P(h <= y) -> G*_alpha(y^{1/beta}), where G*_alpha is the
// generalized inverse of G_alpha(x) = x^alpha (1 - x)^{alpha - 1}.
//
// Truncated Haar products: P(h <= y) -> F*(log y), where F* inverts
// f(x) = sum_j beta_j (2x - 1)^j.

namespace prodspec {

struct GinibreLimit {
  double alpha = 1.0;  // limiting fraction of plain factors, p/m
  double beta = 1.0;   // limiting m / gamma_n
};

const GinibreLimit& validate(const GinibreLimit& lim);

double g_alpha(double alpha, double x);
double g_alpha_derivative(double alpha, double x);

/// Generalized inverse of G_alpha; a CDF in y.
double g_star(double alpha, double y);

double ginibre_limit_cdf(const GinibreLimit& lim, double y);
double ginibre_limit_density(const GinibreLimit& lim, double y);

/// Planar eigenvalue density of a product of k independent spherical
/// matrices (fixed k), evaluated at |z| = r.
double spherical_product_density(int k, double r);

// --- truncated Haar side -------------------------------------------------

double delta_nj(const HaarProductSpec& spec, int j);

/// Delta_n = delta_{n,1}, the total truncation strength.
double capital_delta(const HaarProductSpec& spec);

/// A value together with a certified bound on its truncation error.
struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;
};

enum class GnMode { closed, series };

SeriesValue gn_eval(const HaarProductSpec& spec, double x, GnMode mode = GnMode::closed,
                    int terms = 60);
double gn_derivative(const HaarProductSpec& spec, double x);

/// Asymptotic shape of the coefficients: beta_j = c_parity(j) / j + r_j with
/// |r_j| <= scale * rho^j / j, 0 <= rho < 1. Every coefficient sequence that
/// arises from truncation ratios has this form; carrying it lets f be summed
/// in closed form up to the endpoints instead of refusing there.
struct LogTail {
  double odd = 0.0;
  double even = 0.0;
  double rho = 0.0;
  double scale = 0.0;
};

/// Finite prefix beta_1..beta_J of the coefficient sequence, plus a uniform
/// bound B >= |beta_j| for all j and an optional tail model.
class HaarLimit {
 public:
  static constexpr int kDefaultTerms = 80;

  HaarLimit(std::vector<double> betas, double bound, std::optional<LogTail> tail = std::nullopt);

  const std::vector<double>& betas() const noexcept { return betas_; }
  int terms() const noexcept { return static_cast<int>(betas_.size()); }
  double bound() const noexcept { return bound_; }
  const std::optional<LogTail>& tail() const noexcept { return tail_; }

  /// Bracket [x_lo, x_hi] on which f is evaluated and increasing, and the
  /// values f(x_lo), f(x_hi) standing in for f(0+) and f(1-). Without a tail
  /// model the bracket is [1e-8, 1 - 1e-8], shrunk to where the partial sum
  /// stays increasing.
  double x_lo() const noexcept { return x_lo_; }
  double x_hi() const noexcept { return x_hi_; }
  double f_lo() const noexcept { return f_lo_; }
  double f_hi() const noexcept { return f_hi_; }

 private:
  std::vector<double> betas_;
  double bound_;
  std::optional<LogTail> tail_;
  double x_lo_ = 0.0;
  double x_hi_ = 1.0;
  double f_lo_ = 0.0;
  double f_hi_ = 0.0;
};

/// f(x) with its truncation error bound. Throws AccuracyError when the bound
/// exceeds `tolerance`.
SeriesValue f_beta_eval(const HaarLimit& lim, double x,
                        double tolerance = std::numeric_limits<double>::infinity());
double f_beta_derivative(const HaarLimit& lim, double x);

double f_star_cdf(const HaarLimit& lim, double y);
double f_star_density(const HaarLimit& lim, double y);

/// P(h <= y) = F*(log y) and its density f*(log y) / y.
double haar_limit_cdf(const HaarLimit& lim, double y);
double haar_limit_density(const HaarLimit& lim, double y);

/// beta_j = delta_{n,j} / gamma_n for j = 1..terms, bound Delta_n / gamma_n.
HaarLimit haar_limit_from_spec(const HaarProductSpec& spec, double gamma_n,
                               int terms = HaarLimit::kDefaultTerms);

/// Fixed m, n / n_k -> alpha_k: beta_j = (1/(gamma j)) sum_k (-e_k)^{j-1} (1 - c_k^j)
/// with c_k = alpha_k / (2 - alpha_k).
HaarLimit haar_limit_fixed_m(const SignPattern& signs, const std::vector<double>& ratio_limits,
                             double gamma_n, int terms = HaarLimit::kDefaultTerms);

/// m -> infinity with n / n_k -> alpha uniformly, p / m -> sigma, gamma_n = m.
HaarLimit haar_limit_growing_m(double alpha, double sigma, int terms = HaarLimit::kDefaultTerms);

}  // namespace prodspec

#endif  // PRODSPEC_LIMIT_LAWS_HPP
