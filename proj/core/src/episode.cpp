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

#include "fastdda/episode.hpp"

#include <algorithm>

namespace fastdda {

EpisodeResult run_episode(const Level& level, const Agent& agent, std::uint64_t seed,
                          const EpisodeConfig& config, std::vector<Action>* actions) {
  validate(config.budget);
  Rng game_rng = make_rng(derive_seed(seed, "game"));
  Rng agent_rng = make_rng(derive_seed(seed, "agent"));

  GameState state = GameState::initial(level, config.max_ticks);
  EpisodeResult result;
  while (!state.is_terminal()) {
    ForwardModel model(config.budget);
    const Action action = agent.act(state, model, agent_rng);
    result.forward_calls_used += model.calls_used();
    result.max_calls_per_decision =
        std::max(result.max_calls_per_decision, model.calls_used());
    if (actions) actions->push_back(action);
    state = step(state, action, game_rng);
  }
  result.outcome = state.outcome();
  result.final_score = state.score();
  result.ticks = state.tick();
  return result;
}

}  // namespace fastdda
