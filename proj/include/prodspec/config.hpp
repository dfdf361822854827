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

#ifndef PRODSPEC_CONFIG_HPP
#define PRODSPEC_CONFIG_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace prodspec {

/// Exponent pattern of a product A_1^{e_1} ... A_m^{e_m}; each entry is +1
/// (plain factor) or -1 (inverse factor). Order is preserved even though the
/// limit laws only see the counts: the direct matrix path needs it.
struct SignPattern {
  std::vector<int> values;

  int size() const noexcept { return static_cast<int>(values.size()); }
  int operator[](int k) const { return values[static_cast<std::size_t>(k)]; }

  /// Parses the compact form over {+,-}, e.g. "+-+".
  static SignPattern parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const SignPattern&) const = default;
};

int plus_count(const SignPattern& signs);
int minus_count(const SignPattern& signs);

/// Every entry flipped; the inverse-product pattern.
SignPattern flipped(const SignPattern& signs);

/// Product of n x n complex Ginibre matrices and their inverses.
struct GinibreProductSpec {
  int n = 0;
  SignPattern signs;
};

/// Product of n x n upper-left truncations of Haar unitaries of sizes dims[k].
struct HaarProductSpec {
  int n = 0;
  SignPattern signs;
  std::vector<int> dims;
};

using ProductSpec = std::variant<GinibreProductSpec, HaarProductSpec>;

int dimension(const ProductSpec& spec);
const SignPattern& signs_of(const ProductSpec& spec);

/// The modulus transform h(r) = (r^2 / a_n)^{1/gamma_n}, kept in log form.
struct ScalingPlan {
  double gamma_n = 1.0;
  double log_an = 0.0;
};

/// Comma separated positive integers, e.g. "60,60,80".
std::vector<int> parse_dims(std::string_view text);

// log a_n = (2p - m) ln n; a_n itself is never formed.
double log_an_ginibre(int n, const SignPattern& signs);

// log a_n = sum_k e_k ln(n / (2 n_k - n)).
double log_an_haar(const HaarProductSpec& spec);

double log_an(const ProductSpec& spec);

/// Throw ValidationError naming the first violated invariant; return the
/// argument unchanged otherwise.
const SignPattern& validate(const SignPattern& signs);
const GinibreProductSpec& validate(const GinibreProductSpec& spec);
const HaarProductSpec& validate(const HaarProductSpec& spec);
const ProductSpec& validate(const ProductSpec& spec);
const ScalingPlan& validate(const ScalingPlan& plan);

ScalingPlan make_scaling_plan(const ProductSpec& spec, double gamma_n);

}  // namespace prodspec

#endif  // PRODSPEC_CONFIG_HPP
