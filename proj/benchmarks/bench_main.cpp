// Copyright 2026 The tessfact Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "tessfact/factorization.hpp"
#include "tessfact/marchenko_pastur.hpp"
#include "tessfact/monte_carlo.hpp"
#include "tessfact/svd.hpp"

namespace tessfact {
namespace {

void BM_JacobiSvd(benchmark::State& state) {
  const auto n = state.range(0);
  const Matrix a = draw_demand(n, 2 * n, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(svd(a));
  state.SetComplexityN(n);
}
BENCHMARK(BM_JacobiSvd)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_FactorizeLossless(benchmark::State& state) {
  const SchemeParams p{120, 200, 0, 1, 30, 50};
  SchemeParams q = p;
  q.servers = 4 * 4 * 30;
  const Matrix f = draw_demand(p.users, p.subfunctions, 2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(factorize_lossless(f, q));
}
BENCHMARK(BM_FactorizeLossless)->Unit(benchmark::kMillisecond);

void BM_FactorizeLossy(benchmark::State& state) {
  const SchemeParams p{120, 200, state.range(0), 1, 30, 50};
  const Matrix f = draw_demand(p.users, p.subfunctions, 3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(factorize_lossy(f, p));
}
BENCHMARK(BM_FactorizeLossy)->Arg(16)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_MpCdf(benchmark::State& state) {
  const MarchenkoPastur law(0.5);
  double x = law.lower_edge();
  const double step = (law.upper_edge() - law.lower_edge()) / 1000.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mp_cdf(x, law));
    x += step;
    if (x > law.upper_edge()) x = law.lower_edge();
  }
}
BENCHMARK(BM_MpCdf);

void BM_MpInverse(benchmark::State& state) {
  const MarchenkoPastur law(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(mp_cdf_inv(0.75, law));
}
BENCHMARK(BM_MpInverse);

void BM_PredictedError(benchmark::State& state) {
  const SchemeParams p{400, 400, 400, 1, 200, 100};
  for (auto _ : state) benchmark::DoNotOptimize(predicted_error(p));
}
BENCHMARK(BM_PredictedError);

void BM_MonteCarlo(benchmark::State& state) {
  const SchemeParams p{100, 100, 50, 1, 50, 25};
  MonteCarloOptions opt;
  opt.trials = 8;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo(p, opt));
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace tessfact

BENCHMARK_MAIN();
