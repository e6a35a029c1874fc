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

#include <string_view>

#include "fastdda/forward_model.hpp"
#include "fastdda/grid_game.hpp"
#include "fastdda/rng.hpp"

namespace fastdda {

// A decision policy. Agents keep no state between decisions, so one instance
// can serve many episodes; act() must not be called concurrently on agents
// that break that rule.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string_view name() const = 0;

  // Chooses an action for a non-terminal state. Planning goes through
  // `model`, which enforces the per-decision budget; when the budget runs out
  // the best action found so far is returned.
  virtual Action act(const GameState& state, ForwardModel& model, Rng& rng) const = 0;
};

}  // namespace fastdda
