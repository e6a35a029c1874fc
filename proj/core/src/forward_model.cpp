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

#include "fastdda/forward_model.hpp"

namespace fastdda {

void validate(const BudgetSpec& budget) {
  if (budget.limit <= 0) throw std::invalid_argument("budget limit must be positive");
}

std::string_view to_string(BudgetMode mode) {
  return mode == BudgetMode::CallCount ? "calls" : "wallclock_ms";
}

ForwardModel::ForwardModel(BudgetSpec budget) : budget_(budget) {
  validate(budget_);
  if (budget_.mode == BudgetMode::WallClock) {
    deadline_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_.limit);
  }
}

bool ForwardModel::has_budget() const {
  if (budget_.mode == BudgetMode::CallCount) return calls_ < budget_.limit;
  return std::chrono::steady_clock::now() < deadline_;
}

GameState ForwardModel::advance(const GameState& state, Action action, Rng& rng) {
  // Wall-clock budgets are checked by the caller through has_budget(); the
  // deadline can pass between that check and this call, which is tolerated.
  if (budget_.mode == BudgetMode::CallCount && calls_ >= budget_.limit) {
    throw BudgetExhausted("forward model budget exhausted");
  }
  ++calls_;
  return step(state, action, rng);
}

}  // namespace fastdda
