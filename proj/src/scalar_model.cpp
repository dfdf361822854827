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

#include "prodspec/scalar_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "prodspec/errors.hpp"

namespace prodspec {

namespace {

void require_index(int n, int j) {
  if (j < 1 || j > n) {
    throw DomainError("j=" + std::to_string(j) + " outside [1, " + std::to_string(n) + "]");
  }
}

// The interval (-2j, 2(n+1-j)) is the intersection over both signs; only the
// sides of the signs actually present bind.
bool inside_mgf_interval(int n, int j, const SignPattern& signs, double t) {
  const int p = plus_count(signs);
  return (p == 0 || t > -2.0 * j) && (p == signs.size() || t < 2.0 * (n + 1 - j));
}

void require_mgf_interval(int n, int j, const SignPattern& signs, double t) {
  if (!inside_mgf_interval(n, j, signs, t)) {
    throw DomainError("t=" + std::to_string(t) + " outside the MGF domain (" +
                      std::to_string(-2 * j) + ", " + std::to_string(2 * (n + 1 - j)) + ")");
  }
}

}  // namespace

int alpha_jk(int n, int j, int eps_k) {
  require_index(n, j);
  if (eps_k == 1) return j;
  if (eps_k == -1) return n + 1 - j;
  throw DomainError("eps_k must be +1 or -1");
}

double sample_log_yj_ginibre(const GinibreProductSpec& spec, int j, RngStream& rng) {
  require_index(spec.n, j);
  double acc = 0.0;
  for (int e : spec.signs.values) {
    acc += e * sample_log_gamma(alpha_jk(spec.n, j, e), rng);
  }
  return 0.5 * acc;
}

double sample_log_yj_haar(const HaarProductSpec& spec, int j, RngStream& rng) {
  require_index(spec.n, j);
  double acc = 0.0;
  for (int k = 0; k < spec.signs.size(); ++k) {
    const int e = spec.signs[k];
    const double b = spec.dims[static_cast<std::size_t>(k)] - spec.n;
    acc += e * sample_log_beta(alpha_jk(spec.n, j, e), b, rng);
  }
  return 0.5 * acc;
}

LogSpectrum sample_spectrum_scalar(const ProductSpec& spec, RngStream& rng) {
  LogSpectrum out;
  out.n = dimension(spec);
  out.log_moduli.resize(static_cast<std::size_t>(out.n));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        for (int j = 1; j <= s.n; ++j) {
          if constexpr (std::is_same_v<T, GinibreProductSpec>) {
            out.log_moduli[static_cast<std::size_t>(j - 1)] = sample_log_yj_ginibre(s, j, rng);
          } else {
            out.log_moduli[static_cast<std::size_t>(j - 1)] = sample_log_yj_haar(s, j, rng);
          }
        }
      },
      spec);
  return out;
}

double log_mgf_log_yj_ginibre(const GinibreProductSpec& spec, int j, double t) {
  require_index(spec.n, j);
  require_mgf_interval(spec.n, j, spec.signs, t);
  if (t == 0.0) return 0.0;
  const int p = plus_count(spec.signs);
  const int q = spec.signs.size() - p;
  const double n = spec.n;
  double acc = 0.0;
  if (p > 0) acc += p * (log_gamma(j + 0.5 * t) - log_gamma(j));
  if (q > 0) acc += q * (log_gamma(n + 1 - j - 0.5 * t) - log_gamma(n + 1 - j));
  return acc;
}

double log_mgf_log_yj_haar(const HaarProductSpec& spec, int j, double t) {
  require_index(spec.n, j);
  require_mgf_interval(spec.n, j, spec.signs, t);
  if (t == 0.0) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < spec.signs.size(); ++k) {
    const int e = spec.signs[k];
    const double alpha = alpha_jk(spec.n, j, e);
    const double shifted = alpha + 0.5 * e * t;
    if (!(shifted > 0.0)) {
      throw DomainError("t=" + std::to_string(t) + " makes the Beta moment of factor " +
                        std::to_string(k + 1) + " diverge");
    }
    const double b = spec.dims[static_cast<std::size_t>(k)] - spec.n;
    acc += log_beta(shifted, b) - log_beta(alpha, b);
  }
  return acc;
}

double log_mgf_log_yj(const ProductSpec& spec, int j, double t) {
  return std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GinibreProductSpec>) {
          return log_mgf_log_yj_ginibre(s, j, t);
        } else {
          return log_mgf_log_yj_haar(s, j, t);
        }
      },
      spec);
}

bool mgf_admissible(const ProductSpec& spec, int j, double t) {
  const int n = dimension(spec);
  if (j < 1 || j > n) return false;
  const SignPattern& signs = signs_of(spec);
  if (!inside_mgf_interval(n, j, signs, t)) return false;
  for (int k = 0; k < signs.size(); ++k) {
    if (!(alpha_jk(n, j, signs[k]) + 0.5 * signs[k] * t > 0.0)) return false;
  }
  return true;
}

double log_phi_moment(const ProductSpec& spec, double t) {
  if (!(t > 0.0)) throw DomainError("log_phi_moment: t must be positive");
  const int n = dimension(spec);
  const SignPattern& signs = signs_of(spec);
  const int m = signs.size();
  double acc = (m - 1) * std::log(std::numbers::pi) - std::log(2.0);
  for (int k = 0; k < m; ++k) {
    const double arg = 0.5 * (n + 1 + signs[k] * (t - n));
    if (!(arg > 0.0)) {
      throw DomainError("log_phi_moment: nonpositive argument for factor " + std::to_string(k + 1));
    }
    if (const auto* haar = std::get_if<HaarProductSpec>(&spec)) {
      acc += log_beta(arg, haar->dims[static_cast<std::size_t>(k)] - n);
    } else {
      acc += log_gamma(arg);
    }
  }
  return acc;
}

double exact_scaled_mean_ginibre(const GinibreProductSpec& spec, int j) {
  const int m = spec.signs.size();
  return std::exp(log_mgf_log_yj_ginibre(spec, j, 2.0 / m) -
                  log_an_ginibre(spec.n, spec.signs) / m);
}

double exact_scaled_variance_ginibre(const GinibreProductSpec& spec, int j) {
  const int m = spec.signs.size();
  const double log_an = log_an_ginibre(spec.n, spec.signs);
  const double second = log_mgf_log_yj_ginibre(spec, j, 4.0 / m) - 2.0 * log_an / m;
  const double first = log_mgf_log_yj_ginibre(spec, j, 2.0 / m) - log_an / m;
  // E[X^2] - E[X]^2 = E[X]^2 (exp(second - 2 first) - 1), without cancellation.
  return std::exp(2.0 * first) * std::expm1(second - 2.0 * first);
}

double mean_log_yj(const ProductSpec& spec, int j) {
  constexpr double h = 1e-5;
  return (log_mgf_log_yj(spec, j, h) - log_mgf_log_yj(spec, j, -h)) / (2.0 * h);
}

}  // namespace prodspec
