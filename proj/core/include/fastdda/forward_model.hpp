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

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "fastdda/grid_game.hpp"

namespace fastdda {

enum class BudgetMode { CallCount, WallClock };

// Per-decision planning budget: a number of forward-model calls, or a number
// of milliseconds in wall-clock mode. Wall-clock mode is not reproducible.
struct BudgetSpec {
  BudgetMode mode = BudgetMode::CallCount;
  std::int64_t limit = 1000;

  friend bool operator==(const BudgetSpec&, const BudgetSpec&) = default;
};

void validate(const BudgetSpec& budget);

std::string_view to_string(BudgetMode mode);

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The simulator handed to a planner for one decision. Every advance() is
// counted; once the budget is spent advance() throws, so planners must poll
// has_budget() before simulating.
class ForwardModel {
 public:
  explicit ForwardModel(BudgetSpec budget);

  bool has_budget() const;
  std::int64_t calls_used() const { return calls_; }
  const BudgetSpec& budget() const { return budget_; }

  GameState advance(const GameState& state, Action action, Rng& rng);

 private:
  BudgetSpec budget_;
  std::int64_t calls_ = 0;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace fastdda
