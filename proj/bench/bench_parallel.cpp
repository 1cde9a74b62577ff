// Copyright 2026 The fracboost Authors
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


// Serial reference versus OpenMP candidate evaluation.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "fracboost/abc.hpp"
#include "fracboost/tuning.hpp"

using namespace fracboost;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::OpenMP;
}

// short closed-loop horizon so one batch stays in the tens of milliseconds
TuningProblem short_problem() {
  TuningProblem p;
  p.scenario.horizon = 0.005;
  p.scenario.record_decimation = 0;
  return p;
}

std::vector<std::vector<double>> random_points(const std::vector<Bounds>& box, std::size_t n) {
  std::mt19937_64 rng(3);
  std::vector<std::vector<double>> pts(n, std::vector<double>(box.size()));
  for (auto& x : pts) {
    for (std::size_t j = 0; j < box.size(); ++j) {
      x[j] = std::uniform_real_distribution<double>(box[j].lo, box[j].hi)(rng);
    }
  }
  return pts;
}

void BM_TuningBatch(benchmark::State& state) {
  const TuningProblem problem = short_problem();
  const auto box = search_bounds(ControllerKind::Fopid, problem.box);
  const auto pts = random_points(box, 16);
  const Objective cost = [&](std::span<const double> x) {
    return tuning_cost(ControllerKind::Fopid, decode(ControllerKind::Fopid, x), problem);
  };
  std::vector<double> costs(pts.size());
  for (auto _ : state) {
    evaluate_batch(cost, pts, costs, mode(state));
    benchmark::DoNotOptimize(costs.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_TuningBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TuneFopid(benchmark::State& state) {
  const TuningProblem problem = short_problem();
  AbcConfig cfg;
  cfg.max_iterations = 3;
  for (auto _ : state) {
    const TuningResult r = tune_fopid(problem, cfg, mode(state));
    benchmark::DoNotOptimize(r.params.kp);
  }
}
BENCHMARK(BM_TuneFopid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Sphere(benchmark::State& state) {
  AbcConfig cfg;
  cfg.bounds.assign(5, Bounds{-5.0, 5.0});
  cfg.max_iterations = 200;
  const Objective sphere = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  for (auto _ : state) {
    const AbcResult r = optimize(sphere, cfg, mode(state));
    benchmark::DoNotOptimize(r.best.cost);
  }
}
BENCHMARK(BM_Sphere)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
