/*
 * Copyright (C) 2026 The ponplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "ponplan/kernels.hpp"
#include "ponplan/scenario.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

namespace {

using ponplan::Point2D;
namespace kernels = ponplan::kernels;

std::vector<Point2D> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64                        rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<Point2D>                   out(n);
  for (auto &p : out) p = {u(rng), u(rng)};
  return out;
}

template <bool Parallel>
void BM_NearestCentroid(benchmark::State &state) {
  const auto                 points    = random_points(static_cast<std::size_t>(state.range(0)), 1);
  const auto                 centroids = random_points(static_cast<std::size_t>(state.range(1)), 2);
  std::vector<std::uint32_t> labels(points.size());
  std::vector<double>        sq(points.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::nearest_centroid(points, centroids, labels, sq);
    else kernels::nearest_centroid_serial(points, centroids, labels, sq);
    benchmark::DoNotOptimize(labels.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

template <bool Parallel>
void BM_DistanceMatrix(benchmark::State &state) {
  const auto rows = random_points(static_cast<std::size_t>(state.range(0)), 3);
  const auto cols = random_points(static_cast<std::size_t>(state.range(1)), 4);
  for (auto _ : state) {
    auto m = Parallel ? kernels::distance_matrix(rows, cols) : kernels::distance_matrix_serial(rows, cols);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void BM_GenerateScenario(benchmark::State &state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto s = ponplan::make_scenario(ponplan::ScenarioLabel::Urban, 16, seed++);
    benchmark::DoNotOptimize(s);
  }
}

} // namespace

BENCHMARK(BM_NearestCentroid<false>)->Name("nearest_centroid/serial")->Args({20000, 100})->Args({200000, 200});
BENCHMARK(BM_NearestCentroid<true>)->Name("nearest_centroid/openmp")->Args({20000, 100})->Args({200000, 200});
BENCHMARK(BM_DistanceMatrix<false>)->Name("distance_matrix/serial")->Args({1000, 1000})->Args({4000, 4000});
BENCHMARK(BM_DistanceMatrix<true>)->Name("distance_matrix/openmp")->Args({1000, 1000})->Args({4000, 4000});
BENCHMARK(BM_GenerateScenario)->Name("make_scenario/urban_1-16")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
