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


// Serial reference kernels against their OpenMP versions. The worker count is
// the second range argument; 0 runs the serial reference.

#include <benchmark/benchmark.h>

#include "prodspec/kernels.hpp"

namespace {

using namespace prodspec;

const ProductSpec kSpherical = GinibreProductSpec{200, SignPattern::parse("-+")};

void BM_ScalarReplicates(benchmark::State& state) {
  const auto reps = static_cast<std::size_t>(state.range(0));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto out = workers == 0 ? sample_scalar_replicates_serial(kSpherical, 1, reps)
                            : sample_scalar_replicates(kSpherical, 1, reps, workers);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 200);
}
BENCHMARK(BM_ScalarReplicates)->ArgsProduct({{200}, {0, 1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_MatrixReplicates(benchmark::State& state) {
  const ProductSpec spec = GinibreProductSpec{static_cast<int>(state.range(0)), SignPattern::parse("-+")};
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto out = workers == 0 ? sample_matrix_replicates_serial(spec, 1, 8) : sample_matrix_replicates(spec, 1, 8, workers);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 8);
}
BENCHMARK(BM_MatrixReplicates)->ArgsProduct({{50, 100}, {0, 1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_LogYjDraws(benchmark::State& state) {
  const ProductSpec spec = HaarProductSpec{100, SignPattern::parse("+-+"), {150, 200, 101}};
  const int workers = static_cast<int>(state.range(1));
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto out = workers == 0 ? sample_log_yj_draws_serial(spec, 40, 7, count) : sample_log_yj_draws(spec, 40, 7, count, workers);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogYjDraws)->ArgsProduct({{1 << 17}, {0, 1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
