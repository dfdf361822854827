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

#include "prodspec/kernels.hpp"

#include <exception>
#include <limits>

#include <omp.h>

namespace prodspec {

namespace {

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

LogSpectrum scalar_replicate(const ProductSpec& spec, std::uint64_t seed, std::size_t r) {
  RngStream rng(seed, replicate_stream(SamplePath::scalar, r));
  return sample_spectrum_scalar(spec, rng);
}

EigenSample matrix_replicate(const ProductSpec& spec, std::uint64_t seed, std::size_t r) {
  RngStream rng(seed, replicate_stream(SamplePath::matrix, r));
  return sample_spectrum_matrix(spec, rng);
}

void fill_chunk(const ProductSpec& spec, int j, std::uint64_t seed, std::size_t chunk,
                std::vector<double>& out) {
  RngStream rng(seed, replicate_stream(SamplePath::moments, chunk));
  const std::size_t begin = chunk * kDrawChunk;
  const std::size_t end = std::min(out.size(), begin + kDrawChunk);
  if (const auto* g = std::get_if<GinibreProductSpec>(&spec)) {
    for (std::size_t i = begin; i < end; ++i) out[i] = sample_log_yj_ginibre(*g, j, rng);
  } else {
    const auto& h = std::get<HaarProductSpec>(spec);
    for (std::size_t i = begin; i < end; ++i) out[i] = sample_log_yj_haar(h, j, rng);
  }
}

}  // namespace

std::vector<LogSpectrum> sample_scalar_replicates(const ProductSpec& spec, std::uint64_t seed,
                                                  std::size_t replicates, int workers) {
  validate(spec);
  std::vector<LogSpectrum> out(replicates);
  const auto count = static_cast<std::int64_t>(replicates);
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_workers(workers))
  for (std::int64_t r = 0; r < count; ++r) {
    out[static_cast<std::size_t>(r)] = scalar_replicate(spec, seed, static_cast<std::size_t>(r));
  }
  return out;
}

std::vector<LogSpectrum> sample_scalar_replicates_serial(const ProductSpec& spec,
                                                         std::uint64_t seed,
                                                         std::size_t replicates) {
  validate(spec);
  std::vector<LogSpectrum> out;
  out.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r) out.push_back(scalar_replicate(spec, seed, r));
  return out;
}

std::vector<EigenSample> sample_matrix_replicates(const ProductSpec& spec, std::uint64_t seed,
                                                  std::size_t replicates, int workers) {
  validate(spec);
  std::vector<EigenSample> out(replicates);
  std::vector<std::exception_ptr> errors(replicates);
  const auto count = static_cast<std::int64_t>(replicates);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
  for (std::int64_t r = 0; r < count; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    try {
      out[idx] = matrix_replicate(spec, seed, idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<EigenSample> sample_matrix_replicates_serial(const ProductSpec& spec,
                                                         std::uint64_t seed,
                                                         std::size_t replicates) {
  validate(spec);
  std::vector<EigenSample> out;
  out.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r) out.push_back(matrix_replicate(spec, seed, r));
  return out;
}

std::vector<double> sample_log_yj_draws(const ProductSpec& spec, int j, std::uint64_t seed,
                                        std::size_t count, int workers) {
  validate(spec);
  std::vector<double> out(count);
  const auto chunks = static_cast<std::int64_t>((count + kDrawChunk - 1) / kDrawChunk);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (std::int64_t c = 0; c < chunks; ++c) {
    try {
      fill_chunk(spec, j, seed, static_cast<std::size_t>(c), out);
    } catch (...) {
      errors[static_cast<std::size_t>(c)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<double> sample_log_yj_draws_serial(const ProductSpec& spec, int j,
                                               std::uint64_t seed, std::size_t count) {
  validate(spec);
  std::vector<double> out(count);
  const std::size_t chunks = (count + kDrawChunk - 1) / kDrawChunk;
  for (std::size_t c = 0; c < chunks; ++c) fill_chunk(spec, j, seed, c, out);
  return out;
}

}  // namespace prodspec
