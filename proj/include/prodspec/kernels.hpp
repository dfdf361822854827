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

#ifndef PRODSPEC_KERNELS_HPP
#define PRODSPEC_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prodspec/config.hpp"
#include "prodspec/matrix_model.hpp"
#include "prodspec/scalar_model.hpp"

// Replicate-level Monte Carlo kernels. Each kernel has an OpenMP version and a
// plain serial reference; both derive every RNG stream from (seed, replicate)
// alone, so their outputs are bitwise identical for any worker count.

namespace prodspec {

enum class SamplePath : std::uint64_t { scalar = 0, matrix = 1, moments = 2 };

/// Stream index of replicate `r` on `path`.
constexpr std::uint64_t replicate_stream(SamplePath path, std::uint64_t r) {
  return r * 4 + static_cast<std::uint64_t>(path);
}

/// Draws per stream in sample_log_yj_draws.
inline constexpr std::size_t kDrawChunk = 4096;

/// `workers` <= 0 means the OpenMP default.
std::vector<LogSpectrum> sample_scalar_replicates(const ProductSpec& spec, std::uint64_t seed,
                                                  std::size_t replicates, int workers = 0);
std::vector<LogSpectrum> sample_scalar_replicates_serial(const ProductSpec& spec,
                                                         std::uint64_t seed,
                                                         std::size_t replicates);

/// Rethrows the failure of the lowest failing replicate index, so the
/// reported error does not depend on scheduling.
std::vector<EigenSample> sample_matrix_replicates(const ProductSpec& spec, std::uint64_t seed,
                                                  std::size_t replicates, int workers = 0);
std::vector<EigenSample> sample_matrix_replicates_serial(const ProductSpec& spec,
                                                         std::uint64_t seed,
                                                         std::size_t replicates);

/// `count` independent draws of log Y_j, chunked into kDrawChunk-sized streams.
std::vector<double> sample_log_yj_draws(const ProductSpec& spec, int j, std::uint64_t seed,
                                        std::size_t count, int workers = 0);
std::vector<double> sample_log_yj_draws_serial(const ProductSpec& spec, int j,
                                               std::uint64_t seed, std::size_t count);

}  // namespace prodspec

#endif  // PRODSPEC_KERNELS_HPP
