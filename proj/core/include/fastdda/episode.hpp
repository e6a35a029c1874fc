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

#pragma once

#include <cstdint>
#include <vector>

#include "fastdda/agent.hpp"
#include "fastdda/forward_model.hpp"
#include "fastdda/grid_game.hpp"
#include "fastdda/level.hpp"

namespace fastdda {

struct EpisodeConfig {
  int max_ticks = kDefaultMaxTicks;
  BudgetSpec budget;

  friend bool operator==(const EpisodeConfig&, const EpisodeConfig&) = default;
};

struct EpisodeResult {
  Outcome outcome = Outcome::Loss;
  int final_score = 0;
  int ticks = 0;
  std::int64_t forward_calls_used = 0;
  std::int64_t max_calls_per_decision = 0;

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

// Plays one episode. The game's enemy stream and the agent's planning stream
// are both derived from `seed`, so the result is a pure function of
// (level, agent, seed, config) in call-count mode. If `actions` is non-null
// the chosen actions are appended to it.
EpisodeResult run_episode(const Level& level, const Agent& agent, std::uint64_t seed,
                          const EpisodeConfig& config,
                          std::vector<Action>* actions = nullptr);

}  // namespace fastdda
