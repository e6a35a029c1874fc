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

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fastdda/agent.hpp"

namespace fastdda {

enum class AgentKind { DoNothing, Random, OSLA, GTS, RS, RHEA, MCTS, OLETS };

inline constexpr std::array<AgentKind, 8> kAgentKinds = {
    AgentKind::DoNothing, AgentKind::Random, AgentKind::OSLA, AgentKind::GTS,
    AgentKind::RS,        AgentKind::RHEA,   AgentKind::MCTS, AgentKind::OLETS};

std::string_view to_string(AgentKind kind);
std::optional<AgentKind> parse_agent_kind(std::string_view name);

struct OslaParams {
  double kill_bonus = 10.0;
};

struct RandomSearchParams {
  int playtraces = 50;
  int depth = 10;
};

struct RheaParams {
  int population = 10;
  int horizon = 10;
  double mutation_rate = 0.2;
  int elites = 1;
  int tournament = 2;
};

struct MctsParams {
  double exploration = std::sqrt(2.0);
  int rollout_depth = 10;
};

struct OletsParams {
  double exploration = std::sqrt(2.0);
  // Weight of the best child in a node's score; the rest is the node's own
  // empirical mean.
  double max_child_weight = 0.5;
  int max_depth = 10;
};

struct AgentParams {
  OslaParams osla;
  RandomSearchParams rs;
  RheaParams rhea;
  MctsParams mcts;
  OletsParams olets;
};

std::unique_ptr<Agent> make_agent(AgentKind kind, const AgentParams& params = {});

class DoNothingAgent final : public Agent {
 public:
  std::string_view name() const override { return "DoNothing"; }
  Action act(const GameState&, ForwardModel&, Rng&) const override { return Action::Nil; }
};

class RandomAgent final : public Agent {
 public:
  std::string_view name() const override { return "Random"; }
  Action act(const GameState& state, ForwardModel& model, Rng& rng) const override;
};

// One-step look-ahead. Each action is simulated once; successors are scored
// by win/loss, score gained and a bonus for killing an enemy. Ties are
// broken uniformly at random, so with nothing within one step the agent
// wanders.
class OslaAgent final : public Agent {
 public:
  explicit OslaAgent(OslaParams params = {}) : params_(params) {}
  std::string_view name() const override { return "OSLA"; }
  Action act(const GameState& state, ForwardModel& model, Rng& rng) const override;

 private:
  OslaParams params_;
};

// Greedy best-first tree search on state_value. Children that revisit an
// (avatar cell, key, score) combination are not expanded again; ties prefer
// shallower nodes, then a random draw.
class GreedyTreeSearchAgent final : public Agent {
 public:
  std::string_view name() const override { return "GTS"; }
  Action act(const GameState& state, ForwardModel& model, Rng& rng) const override;
};

class RandomSearchAgent final : public Agent {
 public:
  explicit RandomSearchAgent(RandomSearchParams params = {}) : params_(params) {}
  std::string_view name() const override { return "RS"; }
  Action act(const GameState& state, ForwardModel& model, Rng& rng) const override;

 private:
  RandomSearchParams params_;
};

class RheaAgent final : public Agent {
 public:
  explicit RheaAgent(RheaParams params = {}) : params_(params) {}
  std::string_view name() const override { return "RHEA"; }
  Action act(const GameState& state, ForwardModel& model, Rng& rng) const override;

 private:
  RheaParams params_;
};

// Open-loop UCT: the tree stores action sequences and every iteration
// re-simulates from the root.
class MctsAgent final : public Agent {
 public:
  explicit MctsAgent(MctsParams params = {}) : params_(params) {}
  std::string_view name() const override { return "MCTS"; }
  Action act(const GameState& state, ForwardModel& model, Rng& rng) const override;

 private:
  MctsParams params_;
};

// Open Loop Expectimax Tree Search: one node is added per simulation and the
// end state is scored directly; nodes are ranked by a blend of their mean
// value and the best score among their children.
class OletsAgent final : public Agent {
 public:
  explicit OletsAgent(OletsParams params = {}) : params_(params) {}
  std::string_view name() const override { return "OLETS"; }
  Action act(const GameState& state, ForwardModel& model, Rng& rng) const override;

 private:
  OletsParams params_;
};

}  // namespace fastdda
