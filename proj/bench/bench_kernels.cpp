// Copyright 2026 The qpebt Authors
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


// Serial reference kernels against their OpenMP counterparts.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qpebt/channels.hpp"
#include "qpebt/kernels.hpp"
#include "qpebt/schmidt.hpp"

namespace {

using namespace qpebt;

CMatrix random_matrix(long n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(n, n);
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) m(i, j) = complex_t(g(rng), g(rng));
  return m;
}

template <bool Parallel>
void BM_PartialTrace(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const CMatrix m = random_matrix(static_cast<long>(d) * d, rng);
  const std::vector<int> dims = {d, d};
  const int keep[1] = {0};
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::partial_trace(m, dims, keep));
    else
      benchmark::DoNotOptimize(kernels::serial::partial_trace(m, dims, keep));
  }
}

template <bool Parallel>
void BM_PartialTranspose(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const CMatrix m = random_matrix(static_cast<long>(d) * d, rng);
  const std::vector<int> dims = {d, d};
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::partial_transpose(m, dims, 1));
    else
      benchmark::DoNotOptimize(kernels::serial::partial_transpose(m, dims, 1));
  }
}

template <bool Parallel>
void BM_BlockwiseApply(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  const CMatrix m = random_matrix(static_cast<long>(d) * d, rng);
  const auto lam = reduction_map(d, 0.5);
  const kernels::BlockMap map = [&lam](const CMatrix& x) { return lam(x); };
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::blockwise_apply(m, d, d, d, map));
    else
      benchmark::DoNotOptimize(kernels::serial::blockwise_apply(m, d, d, d, map));
  }
}

template <bool Parallel>
void BM_ConjugationSum(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto ops = phi_lambda(d, 0.3).kraus_ops();
  std::mt19937_64 rng(4);
  const CMatrix x = random_matrix(d, rng);
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::conjugation_sum(x, ops));
    else
      benchmark::DoNotOptimize(kernels::serial::conjugation_sum(x, ops));
  }
}

template <bool Parallel>
void BM_LowerBound(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DensityMatrix rho = isotropic_fidelity(d, 0.7);
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(sn_lower_bound(rho));
    else
      benchmark::DoNotOptimize(sn_lower_bound_serial(rho));
  }
}

}  // namespace

BENCHMARK(BM_PartialTrace<false>)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_PartialTrace<true>)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_PartialTranspose<false>)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_PartialTranspose<true>)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_BlockwiseApply<false>)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_BlockwiseApply<true>)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_ConjugationSum<false>)->Arg(4)->Arg(8);
BENCHMARK(BM_ConjugationSum<true>)->Arg(4)->Arg(8);
BENCHMARK(BM_LowerBound<false>)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_LowerBound<true>)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
