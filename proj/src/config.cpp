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

#include "prodspec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "prodspec/errors.hpp"

namespace prodspec {

SignPattern SignPattern::parse(std::string_view text) {
  SignPattern out;
  out.values.reserve(text.size());
  for (char c : text) {
    if (c == '+') {
      out.values.push_back(1);
    } else if (c == '-') {
      out.values.push_back(-1);
    } else {
      throw ValidationError("signs", std::string("unexpected character '") + c +
                                         "', expected '+' or '-'");
    }
  }
  validate(out);
  return out;
}

std::string SignPattern::to_string() const {
  std::string out;
  out.reserve(values.size());
  for (int e : values) out.push_back(e > 0 ? '+' : '-');
  return out;
}

int plus_count(const SignPattern& signs) {
  return static_cast<int>(std::count(signs.values.begin(), signs.values.end(), 1));
}

int minus_count(const SignPattern& signs) {
  return static_cast<int>(std::count(signs.values.begin(), signs.values.end(), -1));
}

SignPattern flipped(const SignPattern& signs) {
  SignPattern out = signs;
  for (int& e : out.values) e = -e;
  return out;
}

int dimension(const ProductSpec& spec) {
  return std::visit([](const auto& s) { return s.n; }, spec);
}

const SignPattern& signs_of(const ProductSpec& spec) {
  return std::visit([](const auto& s) -> const SignPattern& { return s.signs; }, spec);
}

std::vector<int> parse_dims(std::string_view text) {
  std::vector<int> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw ValidationError("dims", "cannot parse '" + std::string(token) + "' as an integer");
    }
    dims.push_back(value);
    pos = comma + 1;
  }
  return dims;
}

double log_an_ginibre(int n, const SignPattern& signs) {
  const int exponent = 2 * plus_count(signs) - signs.size();
  if (exponent == 0) return 0.0;
  return exponent * std::log(static_cast<double>(n));
}

double log_an_haar(const HaarProductSpec& spec) {
  double acc = 0.0;
  for (int k = 0; k < spec.signs.size(); ++k) {
    const int denom = 2 * spec.dims[static_cast<std::size_t>(k)] - spec.n;
    if (denom <= 0) {
      throw ValidationError("dims", "2*n_k - n must be positive (k=" + std::to_string(k + 1) + ")");
    }
    acc += spec.signs[k] * std::log(static_cast<double>(spec.n) / denom);
  }
  return acc;
}

double log_an(const ProductSpec& spec) {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GinibreProductSpec>) {
          return log_an_ginibre(s.n, s.signs);
        } else {
          return log_an_haar(s);
        }
      },
      spec);
}

const SignPattern& validate(const SignPattern& signs) {
  if (signs.values.empty()) throw ValidationError("signs", "sign pattern is empty");
  for (std::size_t k = 0; k < signs.values.size(); ++k) {
    const int e = signs.values[k];
    if (e != 1 && e != -1) {
      throw ValidationError("signs", "sign not +-1 at position " + std::to_string(k + 1) +
                                         " (got " + std::to_string(e) + ")");
    }
  }
  return signs;
}

const GinibreProductSpec& validate(const GinibreProductSpec& spec) {
  if (spec.n < 1) throw ValidationError("n", "matrix dimension must be >= 1");
  validate(spec.signs);
  return spec;
}

const HaarProductSpec& validate(const HaarProductSpec& spec) {
  if (spec.n < 1) throw ValidationError("n", "truncation dimension must be >= 1");
  validate(spec.signs);
  if (spec.dims.size() != spec.signs.values.size()) {
    throw ValidationError("dims", "dims length " + std::to_string(spec.dims.size()) +
                                      " does not match sign count " +
                                      std::to_string(spec.signs.values.size()));
  }
  for (std::size_t k = 0; k < spec.dims.size(); ++k) {
    if (spec.dims[k] <= spec.n) {
      throw ValidationError("dims", "n_k <= n at position " + std::to_string(k + 1) + " (n_k=" +
                                        std::to_string(spec.dims[k]) +
                                        ", n=" + std::to_string(spec.n) + ")");
    }
  }
  return spec;
}

const ProductSpec& validate(const ProductSpec& spec) {
  std::visit([](const auto& s) { validate(s); }, spec);
  return spec;
}

const ScalingPlan& validate(const ScalingPlan& plan) {
  if (!(plan.gamma_n > 0.0) || !std::isfinite(plan.gamma_n)) {
    throw ValidationError("gamma", "gamma_n must be a positive finite number");
  }
  if (!std::isfinite(plan.log_an)) throw ValidationError("log_an", "log a_n must be finite");
  return plan;
}

ScalingPlan make_scaling_plan(const ProductSpec& spec, double gamma_n) {
  ScalingPlan plan{gamma_n, log_an(validate(spec))};
  validate(plan);
  return plan;
}

}  // namespace prodspec
