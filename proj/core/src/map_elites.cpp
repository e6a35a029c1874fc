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

#include "fastdda/map_elites.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include "fastdda/parallel.hpp"

namespace fastdda {

Evaluation evaluate_level(const Level& level, const Agent& agent, int rollouts,
                          std::uint64_t seed, const EpisodeConfig& episode, int threads) {
  if (rollouts < 1) throw std::invalid_argument("evaluate_level: rollouts must be >= 1");
  std::vector<char> won(static_cast<std::size_t>(rollouts), 0);
  parallel_for(won.size(), threads, [&](std::size_t k) {
    const auto result =
        run_episode(level, agent, derive_seed(seed, static_cast<std::uint64_t>(k)), episode);
    won[k] = result.outcome == Outcome::Win;
  });
  Evaluation eval;
  eval.rollouts = rollouts;
  for (char w : won) eval.wins += w;
  eval.win_rate = static_cast<double>(eval.wins) / static_cast<double>(rollouts);
  eval.performance = performance(eval.wins, rollouts);
  return eval;
}

void validate(const MapElitesConfig& config) {
  if (config.n_init < 1 || config.n_generations < 0 || config.iters_per_gen < 0 ||
      config.rollouts < 1) {
    throw std::invalid_argument(
        "map_elites: need n_init >= 1, rollouts >= 1 and non-negative generation counts");
  }
}

MapElitesResult map_elites(const Agent& agent, const MapElitesConfig& config,
                           const EpisodeConfig& episode, std::uint64_t seed, BehaviorSpace space,
                           int threads,
                           const std::function<void(const CandidateRecord&)>& on_candidate) {
  validate(config);
  MapElitesResult result;
  result.archive = Archive(std::string(agent.name()), space);
  Rng rng = make_rng(derive_seed(seed, "variation"));

  const int total = config.total_candidates();
  result.log.reserve(static_cast<std::size_t>(total));
  for (int j = 0; j < total; ++j) {
    CandidateRecord rec;
    rec.index = j;
    if (j < config.n_init) {
      rec.level = random_solution(rng);
    } else {
      rec.generation = 1 + (j - config.n_init) / std::max(1, config.iters_per_gen);
      const auto& cells = result.archive.cells();
      auto it = std::next(cells.begin(),
                          static_cast<std::ptrdiff_t>(uniform_index(rng, cells.size())));
      rec.parent = it->first;
      rec.level = random_variation(it->second.level, rng);
    }
    rec.descriptor = behavior_descriptor(rec.level);
    rec.cell = space.cell_index(rec.descriptor);
    rec.evaluation =
        evaluate_level(rec.level, agent, config.rollouts,
                       derive_seed_path(seed, "candidate", static_cast<std::uint64_t>(j)),
                       episode, threads);
    rec.inserted = result.archive.try_insert(Elite{rec.level, rec.descriptor,
                                                   rec.evaluation.win_rate,
                                                   rec.evaluation.performance, config.rollouts});
    if (on_candidate) on_candidate(rec);
    result.log.push_back(std::move(rec));
  }
  return result;
}

}  // namespace fastdda
