// Copyright 2026 The vff Authors
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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "vff/kernels.hpp"

namespace {

using vff::Complex;
namespace k = vff::kernels;

std::vector<Complex> random_state(int n) {
  std::mt19937_64 g(n);
  std::normal_distribution<double> d;
  std::vector<Complex> v(std::size_t{1} << n);
  for (auto& z : v) z = {d(g), d(g)};
  return v;
}

const vff::Mat2 kHadamardLike{Complex{0.6, 0.0}, Complex{0.0, 0.8}, Complex{0.0, 0.8}, Complex{0.6, 0.0}};
const std::array<Complex, 4> kDiag{Complex{1, 0}, Complex{0, 1}, Complex{0, 1}, Complex{1, 0}};

template <auto Fn>
void BM_1q(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto v = random_state(n);
  for (auto _ : st) {
    for (int q = 0; q < n; ++q) Fn(v, n, q, kHadamardLike);
    benchmark::DoNotOptimize(v.data());
  }
  st.SetItemsProcessed(st.iterations() * n * static_cast<std::int64_t>(v.size()));
}

template <auto Fn>
void BM_diag(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto v = random_state(n);
  for (auto _ : st) {
    for (int q = 0; q + 1 < n; ++q) Fn(v, n, q, q + 1, kDiag);
    benchmark::DoNotOptimize(v.data());
  }
}

template <auto Fn>
void BM_cnot(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto v = random_state(n);
  for (auto _ : st) {
    for (int q = 0; q + 1 < n; ++q) Fn(v, n, q, q + 1);
    benchmark::DoNotOptimize(v.data());
  }
}

template <auto Fn>
void BM_marginal(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto v = random_state(n);
  const std::vector<int> qs{0, n - 1};
  std::vector<double> out(4);
  for (auto _ : st) {
    Fn(v, n, qs, out);
    benchmark::DoNotOptimize(out.data());
  }
}

#define VFF_BENCH(name, fn) BENCHMARK_TEMPLATE(name, fn)->DenseRange(4, 20, 4)
VFF_BENCH(BM_1q, k::serial::apply_1q);
VFF_BENCH(BM_1q, k::omp::apply_1q);
VFF_BENCH(BM_diag, k::serial::apply_diag_2q);
VFF_BENCH(BM_diag, k::omp::apply_diag_2q);
VFF_BENCH(BM_cnot, k::serial::apply_cnot);
VFF_BENCH(BM_cnot, k::omp::apply_cnot);
VFF_BENCH(BM_marginal, k::serial::marginal);
VFF_BENCH(BM_marginal, k::omp::marginal);

}  // namespace

BENCHMARK_MAIN();
