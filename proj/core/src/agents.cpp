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

#include "fastdda/agents.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

namespace fastdda {

std::string_view to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::DoNothing:
      return "DoNothing";
    case AgentKind::Random:
      return "Random";
    case AgentKind::OSLA:
      return "OSLA";
    case AgentKind::GTS:
      return "GTS";
    case AgentKind::RS:
      return "RS";
    case AgentKind::RHEA:
      return "RHEA";
    case AgentKind::MCTS:
      return "MCTS";
    case AgentKind::OLETS:
      return "OLETS";
  }
  return "?";
}

std::optional<AgentKind> parse_agent_kind(std::string_view name) {
  for (AgentKind kind : kAgentKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::unique_ptr<Agent> make_agent(AgentKind kind, const AgentParams& params) {
  switch (kind) {
    case AgentKind::DoNothing:
      return std::make_unique<DoNothingAgent>();
    case AgentKind::Random:
      return std::make_unique<RandomAgent>();
    case AgentKind::OSLA:
      return std::make_unique<OslaAgent>(params.osla);
    case AgentKind::GTS:
      return std::make_unique<GreedyTreeSearchAgent>();
    case AgentKind::RS:
      return std::make_unique<RandomSearchAgent>(params.rs);
    case AgentKind::RHEA:
      return std::make_unique<RheaAgent>(params.rhea);
    case AgentKind::MCTS:
      return std::make_unique<MctsAgent>(params.mcts);
    case AgentKind::OLETS:
      return std::make_unique<OletsAgent>(params.olets);
  }
  throw std::invalid_argument("unknown agent kind");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Action random_action(Rng& rng) { return kActions[uniform_index(rng, kActions.size())]; }

std::size_t action_index(Action a) { return static_cast<std::size_t>(a); }

// Running bounds used to map raw state values onto [0, 1] within a decision.
struct ValueBounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void observe(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double normalize(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.5; }
};

}  // namespace

Action RandomAgent::act(const GameState&, ForwardModel&, Rng& rng) const {
  return random_action(rng);
}

Action OslaAgent::act(const GameState& state, ForwardModel& model, Rng& rng) const {
  double best = kNegInf;
  std::vector<Action> ties;
  for (Action a : kActions) {
    if (!model.has_budget()) break;
    const GameState next = model.advance(state, a, rng);
    double value = 0.0;
    if (next.outcome() == Outcome::Win) {
      value = kWinValue;
    } else if (next.outcome() == Outcome::Loss) {
      value = kLossValue;
    } else {
      const auto kills = static_cast<double>(state.enemies().size() - next.enemies().size());
      value = (next.score() - state.score()) + params_.kill_bonus * kills;
    }
    if (value > best) {
      best = value;
      ties.assign(1, a);
    } else if (value == best) {
      ties.push_back(a);
    }
  }
  if (ties.empty()) return Action::Nil;
  return ties[uniform_index(rng, ties.size())];
}

Action GreedyTreeSearchAgent::act(const GameState& state, ForwardModel& model,
                                  Rng& rng) const {
  struct Node {
    GameState state;
    Action first;
    int depth;
    double value;
    double tiebreak;
  };
  std::vector<Node> nodes;
  nodes.push_back({state, Action::Nil, 0, state_value(state), 0.0});

  const auto better = [&nodes](std::size_t a, std::size_t b) {
    const Node& x = nodes[a];
    const Node& y = nodes[b];
    if (x.value != y.value) return x.value > y.value;
    if (x.depth != y.depth) return x.depth < y.depth;
    return x.tiebreak > y.tiebreak;
  };
  const auto worse = [&better](std::size_t a, std::size_t b) { return better(b, a); };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> frontier(worse);

  using Signature = std::tuple<int, int, bool, int>;
  const auto signature = [](const GameState& s) {
    return Signature{s.avatar_pos().row, s.avatar_pos().col, s.has_key(), s.score()};
  };
  std::set<Signature> seen{signature(state)};

  std::optional<std::size_t> best;
  frontier.push(0);
  while (!frontier.empty() && model.has_budget()) {
    const std::size_t parent = frontier.top();
    frontier.pop();
    for (Action a : kActions) {
      if (!model.has_budget()) break;
      GameState child = model.advance(nodes[parent].state, a, rng);
      const double value = state_value(child);
      const bool expandable = !child.is_terminal() && seen.insert(signature(child)).second;
      const Action first = nodes[parent].depth == 0 ? a : nodes[parent].first;
      nodes.push_back({std::move(child), first, nodes[parent].depth + 1, value,
                       uniform_real(rng)});
      const std::size_t id = nodes.size() - 1;
      if (!best || better(id, *best)) best = id;
      if (expandable) frontier.push(id);
    }
  }
  return best ? nodes[*best].first : Action::Nil;
}

Action RandomSearchAgent::act(const GameState& state, ForwardModel& model, Rng& rng) const {
  double best = kNegInf;
  Action best_action = Action::Nil;
  for (int t = 0; t < params_.playtraces && model.has_budget(); ++t) {
    const Action first = random_action(rng);
    GameState s = state;
    Action a = first;
    int steps = 0;
    for (int d = 0; d < params_.depth && model.has_budget(); ++d) {
      s = model.advance(s, a, rng);
      ++steps;
      if (s.is_terminal()) break;
      a = random_action(rng);
    }
    if (steps == 0) break;
    const double value = state_value(s);
    if (value > best) {
      best = value;
      best_action = first;
    }
  }
  return best_action;
}

Action RheaAgent::act(const GameState& state, ForwardModel& model, Rng& rng) const {
  struct Individual {
    std::vector<Action> genes;
    double fitness = kNegInf;
  };
  const auto horizon = static_cast<std::size_t>(params_.horizon);

  // Fitness of the state reached by the sequence (truncated when the budget
  // runs out); nullopt if not even one step could be simulated.
  const auto evaluate = [&](const std::vector<Action>& genes) -> std::optional<double> {
    GameState s = state;
    int steps = 0;
    for (Action a : genes) {
      if (!model.has_budget()) break;
      s = model.advance(s, a, rng);
      ++steps;
      if (s.is_terminal()) break;
    }
    if (steps == 0) return std::nullopt;
    return state_value(s);
  };

  std::vector<Individual> population;
  for (int k = 0; k < params_.population; ++k) {
    Individual ind;
    ind.genes.resize(horizon);
    for (auto& g : ind.genes) g = random_action(rng);
    const auto fitness = evaluate(ind.genes);
    if (!fitness) break;
    ind.fitness = *fitness;
    population.push_back(std::move(ind));
  }

  const auto by_fitness = [](const Individual& a, const Individual& b) {
    return a.fitness > b.fitness;
  };
  const auto tournament = [&]() -> const Individual& {
    const Individual* winner = &population[uniform_index(rng, population.size())];
    for (int k = 1; k < params_.tournament; ++k) {
      const Individual& rival = population[uniform_index(rng, population.size())];
      if (rival.fitness > winner->fitness) winner = &rival;
    }
    return *winner;
  };

  while (model.has_budget() && !population.empty()) {
    std::stable_sort(population.begin(), population.end(), by_fitness);
    std::vector<Individual> next(
        population.begin(),
        population.begin() + std::min<std::ptrdiff_t>(params_.elites,
                                                      static_cast<std::ptrdiff_t>(population.size())));
    while (static_cast<int>(next.size()) < params_.population) {
      const Individual& mother = tournament();
      const Individual& father = tournament();
      Individual child;
      const std::size_t cut = horizon > 1 ? uniform_index(rng, horizon - 1) + 1 : 0;
      child.genes.assign(mother.genes.begin(), mother.genes.begin() + static_cast<std::ptrdiff_t>(cut));
      child.genes.insert(child.genes.end(), father.genes.begin() + static_cast<std::ptrdiff_t>(cut),
                         father.genes.end());
      for (auto& g : child.genes) {
        if (uniform_real(rng) < params_.mutation_rate) g = random_action(rng);
      }
      const auto fitness = evaluate(child.genes);
      if (!fitness) break;
      child.fitness = *fitness;
      next.push_back(std::move(child));
    }
    population = std::move(next);
  }
  if (population.empty()) return Action::Nil;
  const auto best = std::min_element(population.begin(), population.end(), by_fitness);
  return best->genes.front();
}

namespace {

struct TreeNode {
  int parent = -1;
  int depth = 0;
  std::array<int, 6> children{-1, -1, -1, -1, -1, -1};
  int visits = 0;
  double total = 0.0;
  double score = 0.0;  // OLETS node score

  double mean() const { return visits > 0 ? total / visits : 0.0; }
};

std::vector<Action> unexpanded(const TreeNode& node) {
  std::vector<Action> out;
  for (Action a : kActions) {
    if (node.children[action_index(a)] < 0) out.push_back(a);
  }
  return out;
}

// Most visited root child; ties go to the higher `key`, then action order.
template <typename Key>
Action most_visited(const std::vector<TreeNode>& nodes, Key key) {
  int best = -1;
  Action best_action = Action::Nil;
  for (Action a : kActions) {
    const int c = nodes[0].children[action_index(a)];
    if (c < 0) continue;
    if (best < 0 || nodes[static_cast<std::size_t>(c)].visits >
                        nodes[static_cast<std::size_t>(best)].visits ||
        (nodes[static_cast<std::size_t>(c)].visits ==
             nodes[static_cast<std::size_t>(best)].visits &&
         key(nodes[static_cast<std::size_t>(c)]) > key(nodes[static_cast<std::size_t>(best)]))) {
      best = c;
      best_action = a;
    }
  }
  return best_action;
}

}  // namespace

Action MctsAgent::act(const GameState& state, ForwardModel& model, Rng& rng) const {
  std::vector<TreeNode> nodes(1);
  ValueBounds bounds;
  std::vector<std::size_t> path;

  while (model.has_budget()) {
    GameState s = state;
    std::size_t n = 0;
    path.assign(1, 0);

    while (!s.is_terminal() && nodes[n].depth < params_.rollout_depth && model.has_budget()) {
      const auto fresh = unexpanded(nodes[n]);
      if (!fresh.empty()) {
        const Action a = fresh[uniform_index(rng, fresh.size())];
        s = model.advance(s, a, rng);
        TreeNode child;
        child.parent = static_cast<int>(n);
        child.depth = nodes[n].depth + 1;
        nodes.push_back(child);
        const std::size_t id = nodes.size() - 1;
        nodes[n].children[action_index(a)] = static_cast<int>(id);
        n = id;
        path.push_back(n);
        break;
      }
      double best = kNegInf;
      Action chosen = Action::Nil;
      const double log_parent = std::log(static_cast<double>(nodes[n].visits));
      for (Action a : kActions) {
        const TreeNode& c = nodes[static_cast<std::size_t>(nodes[n].children[action_index(a)])];
        const double uct = bounds.normalize(c.mean()) +
                           params_.exploration * std::sqrt(log_parent / c.visits) +
                           1e-6 * uniform_real(rng);
        if (uct > best) {
          best = uct;
          chosen = a;
        }
      }
      s = model.advance(s, chosen, rng);
      n = static_cast<std::size_t>(nodes[n].children[action_index(chosen)]);
      path.push_back(n);
    }

    int depth = nodes[n].depth;
    while (!s.is_terminal() && depth < params_.rollout_depth && model.has_budget()) {
      s = model.advance(s, random_action(rng), rng);
      ++depth;
    }

    const double value = state_value(s);
    bounds.observe(value);
    for (const std::size_t id : path) {
      ++nodes[id].visits;
      nodes[id].total += value;
    }
  }
  return most_visited(nodes, [](const TreeNode& t) { return t.mean(); });
}

Action OletsAgent::act(const GameState& state, ForwardModel& model, Rng& rng) const {
  std::vector<TreeNode> nodes(1);
  ValueBounds bounds;
  std::vector<std::size_t> path;
  const double w = params_.max_child_weight;

  while (model.has_budget()) {
    GameState s = state;
    std::size_t n = 0;
    path.assign(1, 0);

    while (!s.is_terminal() && nodes[n].depth < params_.max_depth && model.has_budget()) {
      const auto fresh = unexpanded(nodes[n]);
      if (!fresh.empty()) {
        const Action a = fresh[uniform_index(rng, fresh.size())];
        s = model.advance(s, a, rng);
        TreeNode child;
        child.parent = static_cast<int>(n);
        child.depth = nodes[n].depth + 1;
        nodes.push_back(child);
        const std::size_t id = nodes.size() - 1;
        nodes[n].children[action_index(a)] = static_cast<int>(id);
        path.push_back(id);
        n = id;
        break;  // the new node ends this simulation
      }
      double best = kNegInf;
      Action chosen = Action::Nil;
      const double log_parent = std::log(static_cast<double>(nodes[n].visits));
      for (Action a : kActions) {
        const TreeNode& c = nodes[static_cast<std::size_t>(nodes[n].children[action_index(a)])];
        const double ucb = bounds.normalize(c.score) +
                           params_.exploration * std::sqrt(log_parent / c.visits) +
                           1e-6 * uniform_real(rng);
        if (ucb > best) {
          best = ucb;
          chosen = a;
        }
      }
      s = model.advance(s, chosen, rng);
      n = static_cast<std::size_t>(nodes[n].children[action_index(chosen)]);
      path.push_back(n);
    }

    const double value = state_value(s);
    bounds.observe(value);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      TreeNode& node = nodes[*it];
      ++node.visits;
      node.total += value;
      double best_child = kNegInf;
      for (const int c : node.children) {
        if (c >= 0) best_child = std::max(best_child, nodes[static_cast<std::size_t>(c)].score);
      }
      node.score = best_child == kNegInf ? node.mean() : (1.0 - w) * node.mean() + w * best_child;
    }
  }
  return most_visited(nodes, [](const TreeNode& t) { return t.score; });
}

}  // namespace fastdda
