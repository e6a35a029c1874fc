// Copyright 2026 The fastdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <vector>

#include "fastdda/adapt.hpp"
#include "fastdda/agents.hpp"
#include "fastdda/gaussian_process.hpp"
#include "fastdda/grid_game.hpp"
#include "fastdda/level_gen.hpp"

namespace fastdda {
namespace {

Level bench_level() {
  return parse_level(
      "wwwwwwwwww\n"
      "wA...w...w\n"
      "w.2..w.1.w\n"
      "w.......+w\n"
      "w..3.....w\n"
      "w.ww...g.w\n"
      "wwwwwwwwww");
}

void BM_Step(benchmark::State& state) {
  const GameState start = GameState::initial(bench_level());
  Rng rng = make_rng(1);
  GameState s = start;
  for (auto _ : state) {
    if (s.is_terminal()) s = start;
    s = step(s, kActions[uniform_index(rng, kActions.size())], rng);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Step);

void BM_AStar(benchmark::State& state) {
  const Level level = bench_level();
  for (auto _ : state) {
    benchmark::DoNotOptimize(astar_path(level, level.avatar(), level.goal()));
  }
}
BENCHMARK(BM_AStar);

void BM_RandomSolution(benchmark::State& state) {
  Rng rng = make_rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(random_solution(rng));
}
BENCHMARK(BM_RandomSolution);

void BM_RandomVariation(benchmark::State& state) {
  Rng rng = make_rng(3);
  Level level = random_solution(rng);
  for (auto _ : state) {
    level = random_variation(level, rng);
    benchmark::DoNotOptimize(level);
  }
}
BENCHMARK(BM_RandomVariation);

void BM_Kernel(benchmark::State& state) {
  const Matern52Kernel k;
  GpPoint a{0.1, 0.2, 0.3};
  const GpPoint b{0.7, 0.4, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(k(a, b));
    a[0] += 1e-9;
  }
}
BENCHMARK(BM_Kernel);

void BM_GpPredict(benchmark::State& state) {
  Rng rng = make_rng(4);
  GaussianProcess gp;
  for (int i = 0; i < state.range(0); ++i) {
    gp.add_observation({uniform_real(rng), uniform_real(rng), uniform_real(rng)}, 0.5,
                       uniform_real(rng));
  }
  const GpPoint q{0.5, 0.5, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(gp.predict(q, 0.5));
}
BENCHMARK(BM_GpPredict)->Arg(1)->Arg(5)->Arg(20);

void BM_SelectNext(benchmark::State& state) {
  Rng rng = make_rng(5);
  Archive archive("bench");
  for (int n = 0; n < 2000; ++n) {
    const Level level = random_solution(rng);
    const auto d = behavior_descriptor(level);
    const double w = uniform_real(rng);
    archive.try_insert({level, d, w, performance(w), 1});
  }
  ArchivePosterior posterior(archive, Matern52Kernel{});
  for (int i = 0; i < 5; ++i) {
    const auto sel = select_next(archive, posterior, 0.03);
    posterior.observe(sel.cell, 0.0);
  }
  state.counters["cells"] = static_cast<double>(archive.size());
  for (auto _ : state) benchmark::DoNotOptimize(select_next(archive, posterior, 0.03));
}
BENCHMARK(BM_SelectNext);

void BM_AgentAct(benchmark::State& state) {
  const auto kind = kAgentKinds[static_cast<std::size_t>(state.range(0))];
  const auto agent = make_agent(kind);
  const GameState s = GameState::initial(bench_level());
  Rng rng = make_rng(6);
  state.SetLabel(std::string(to_string(kind)));
  for (auto _ : state) {
    ForwardModel model({BudgetMode::CallCount, 300});
    benchmark::DoNotOptimize(agent->act(s, model, rng));
  }
}
BENCHMARK(BM_AgentAct)->DenseRange(0, 7);

}  // namespace
}  // namespace fastdda

BENCHMARK_MAIN();
