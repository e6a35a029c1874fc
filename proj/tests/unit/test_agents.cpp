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


#include <map>
#include <memory>
#include <set>
#include <vector>

#include "doctest.h"
#include "fastdda/agents.hpp"
#include "fastdda/episode.hpp"
#include "fastdda/forward_model.hpp"
#include "fastdda/level_gen.hpp"
#include "oracles.hpp"

namespace fastdda {

namespace {

// Exhaustive breadth-first search over an enemy-free level. Returns the set of
// first actions that start a shortest winning action sequence.
std::set<Action> optimal_first_actions(const Level& level) {
  Rng rng = make_rng(0);  // unused without enemies
  const GameState root = GameState::initial(level);
  struct Key {
    Cell pos;
    bool key;
    auto operator<=>(const Key&) const = default;
  };
  std::set<Action> best;
  for (Action first : kActions) {
    GameState s = step(root, first, rng);
    if (s.outcome() == Outcome::Win) {
      best.insert(first);
      continue;
    }
  }
  if (!best.empty()) return best;

  int best_depth = -1;
  std::map<Action, int> depth_of;
  for (Action first : kActions) {
    std::set<Key> seen;
    std::vector<GameState> frontier{step(root, first, rng)};
    int depth = 1;
    bool found = false;
    while (!frontier.empty() && !found && depth < 64) {
      std::vector<GameState> next;
      for (const auto& s : frontier) {
        for (Action a : kActions) {
          GameState t = step(s, a, rng);
          if (t.outcome() == Outcome::Win) {
            found = true;
            break;
          }
          if (seen.insert({t.avatar_pos(), t.has_key()}).second) next.push_back(t);
        }
        if (found) break;
      }
      ++depth;
      frontier = std::move(next);
    }
    if (found) depth_of[first] = depth;
  }
  for (auto [a, d] : depth_of) {
    if (best_depth < 0 || d < best_depth) best_depth = d;
  }
  for (auto [a, d] : depth_of) {
    if (d == best_depth) best.insert(a);
  }
  return best;
}

std::vector<GameState> sample_states(int count, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<GameState> out;
  while (static_cast<int>(out.size()) < count) {
    GameState s = GameState::initial(random_solution(rng), 200);
    const int walk = uniform_int(rng, 0, 15);
    for (int k = 0; k < walk && !s.is_terminal(); ++k) {
      s = step(s, kActions[uniform_index(rng, kActions.size())], rng);
    }
    if (!s.is_terminal()) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("agent names round-trip") {
  for (AgentKind k : kAgentKinds) {
    CHECK(parse_agent_kind(to_string(k)) == k);
    CHECK(make_agent(k)->name() == to_string(k));
  }
  CHECK_FALSE(parse_agent_kind("Nope").has_value());
}

TEST_CASE("DoNothing and Random spend no budget") {
  const auto states = sample_states(20, 1);
  for (AgentKind k : {AgentKind::DoNothing, AgentKind::Random}) {
    const auto agent = make_agent(k);
    Rng rng = make_rng(2);
    std::set<Action> seen;
    for (const auto& s : states) {
      ForwardModel model({BudgetMode::CallCount, 50});
      const Action a = agent->act(s, model, rng);
      CHECK(model.calls_used() == 0);
      seen.insert(a);
      if (k == AgentKind::DoNothing) CHECK(a == Action::Nil);
    }
    if (k == AgentKind::Random) CHECK(seen.size() > 3);
  }
}

TEST_CASE("every agent honours the call budget") {
  const auto states = sample_states(25, 3);
  for (AgentKind k : kAgentKinds) {
    CAPTURE(to_string(k));
    const auto agent = make_agent(k);
    for (std::int64_t limit : {1, 2, 7, 60, 300}) {
      Rng rng = make_rng(static_cast<std::uint64_t>(limit));
      for (const auto& s : states) {
        ForwardModel model({BudgetMode::CallCount, limit});
        agent->act(s, model, rng);
        CHECK(model.calls_used() <= limit);
        CHECK_THROWS_AS(
            [&] {
              while (true) model.advance(s, Action::Nil, rng);
            }(),
            BudgetExhausted);
        CHECK(model.calls_used() == limit);
      }
    }
  }
}

TEST_CASE("episodes report per-decision usage within budget") {
  Rng rng = make_rng(4);
  const Level level = random_solution(rng);
  for (AgentKind k : kAgentKinds) {
    CAPTURE(to_string(k));
    const EpisodeConfig config{150, {BudgetMode::CallCount, 40}};
    const auto r = run_episode(level, *make_agent(k), 9, config);
    CHECK(r.max_calls_per_decision <= 40);
    CHECK(r.ticks <= 150);
  }
}

TEST_CASE("agents are deterministic given the seed") {
  const auto states = sample_states(10, 5);
  for (AgentKind k : kAgentKinds) {
    CAPTURE(to_string(k));
    const auto agent = make_agent(k);
    for (const auto& s : states) {
      Rng r1 = make_rng(42);
      Rng r2 = make_rng(42);
      ForwardModel m1({BudgetMode::CallCount, 200});
      ForwardModel m2({BudgetMode::CallCount, 200});
      CHECK(agent->act(s, m1, r1) == agent->act(s, m2, r2));
      CHECK(m1.calls_used() == m2.calls_used());
    }
    Rng gen = make_rng(6);
    const Level level = random_solution(gen);
    const EpisodeConfig config{100, {BudgetMode::CallCount, 100}};
    std::vector<Action> a1;
    std::vector<Action> a2;
    const auto e1 = run_episode(level, *agent, 77, config, &a1);
    const auto e2 = run_episode(level, *agent, 77, config, &a2);
    CHECK(e1 == e2);
    CHECK(a1 == a2);
  }
}

TEST_CASE("OSLA strikes a faced adjacent enemy") {
  for (const char* text : {"wwwwww\nwA3.+w\nw...gw\nwwwwww", "wwwwww\nwA2.+w\nw...gw\nwwwwww",
                           "wwwwww\nwA1.+w\nw...gw\nwwwwww"}) {
    CAPTURE(text);
    GameState s = GameState::initial(parse_level(text));
    s.set_avatar_facing(Direction::Right);
    OslaAgent osla;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng = make_rng(seed);
      ForwardModel model({BudgetMode::CallCount, 1000});
      CHECK(osla.act(s, model, rng) == Action::Use);
      CHECK(model.calls_used() == static_cast<std::int64_t>(kActions.size()));
    }
  }
}

TEST_CASE("OSLA wins a key-goal corridor in two ticks") {
  const Level level = parse_level("wwwww\nwA+gw\nwwwww");
  std::vector<Action> actions;
  const auto r = run_episode(level, OslaAgent{}, 1, EpisodeConfig{}, &actions);
  CHECK(r.outcome == Outcome::Win);
  CHECK(r.ticks == 2);
  CHECK(r.final_score == kKeyScore + kWinScore);
  CHECK(actions == std::vector<Action>{Action::Right, Action::Right});
}

TEST_CASE("OSLA ignores everything beyond one step") {
  Rng gen = make_rng(12);
  OslaAgent osla;
  int checked = 0;
  for (int n = 0; n < 400; ++n) {
    Level level = random_solution(gen);
    mutate_enemies(level, -9, gen);  // enemy moves would draw from the shared rng
    Level far = level;
    const Cell a = level.avatar();
    for (int r = 1; r < level.height() - 1; ++r) {
      for (int c = 1; c < level.width() - 1; ++c) {
        const Cell cell{r, c};
        if (manhattan(cell, a) <= 1) continue;
        const Tile t = far.at(cell);
        if (t == Tile::Floor && uniform_int(gen, 0, 2) == 0) far.set(cell, Tile::Wall);
        else if (t == Tile::Wall && uniform_int(gen, 0, 1) == 0) far.set(cell, Tile::Floor);
      }
    }
    const GameState s1 = GameState::initial(level);
    const GameState s2 = GameState::initial(far);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      Rng r1 = make_rng(seed);
      Rng r2 = make_rng(seed);
      ForwardModel m1({BudgetMode::CallCount, 1000});
      ForwardModel m2({BudgetMode::CallCount, 1000});
      CHECK(osla.act(s1, m1, r1) == osla.act(s2, m2, r2));
      ++checked;
    }
  }
  CHECK(checked == 1200);
}

TEST_CASE("search agents take a shortest winning first step") {
  const Level level = parse_level(
      "wwwwwww\n"
      "w.....w\n"
      "w.A+g.w\n"
      "w.....w\n"
      "wwwwwww");
  const auto oracle = optimal_first_actions(level);
  REQUIRE(oracle == std::set<Action>{Action::Right});
  const GameState s = GameState::initial(level);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng = make_rng(seed);
    ForwardModel model({BudgetMode::CallCount, 100000});
    CHECK(oracle.count(MctsAgent{}.act(s, model, rng)) == 1);
  }
  for (AgentKind k : {AgentKind::GTS, AgentKind::OLETS}) {
    CAPTURE(to_string(k));
    Rng rng = make_rng(1);
    ForwardModel model({BudgetMode::CallCount, 1000});
    CHECK(oracle.count(make_agent(k)->act(s, model, rng)) == 1);
  }
}

TEST_CASE("MCTS routes around a wall to the key") {
  const Level level = parse_level(
      "wwwwww\n"
      "w.+..w\n"
      "wAwg.w\n"
      "w....w\n"
      "wwwwww");
  const auto oracle = optimal_first_actions(level);
  REQUIRE(oracle == std::set<Action>{Action::Up});
  const GameState s = GameState::initial(level);
  Rng rng = make_rng(3);
  ForwardModel model({BudgetMode::CallCount, 100000});
  CHECK(oracle.count(MctsAgent{}.act(s, model, rng)) == 1);
}

TEST_CASE("wall-clock budget stops on time") {
  const auto states = sample_states(3, 8);
  Rng rng = make_rng(1);
  for (const auto& s : states) {
    ForwardModel model({BudgetMode::WallClock, 5});
    const auto t0 = std::chrono::steady_clock::now();
    MctsAgent{}.act(s, model, rng);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    CHECK(ms < 200);
    CHECK(model.calls_used() > 0);
  }
  CHECK_THROWS(validate(BudgetSpec{BudgetMode::CallCount, 0}));
}

}  // namespace fastdda
