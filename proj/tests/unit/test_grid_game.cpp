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


#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fastdda/grid_game.hpp"
#include "fastdda/level.hpp"
#include "fastdda/level_gen.hpp"
#include "fastdda/rng.hpp"

namespace fastdda {
namespace {

GameState load(const char* text, int max_ticks = kDefaultMaxTicks) {
  return GameState::initial(parse_level(text), max_ticks);
}

}  // namespace

TEST_CASE("level text round-trips") {
  const std::string text =
      "wwwwww\n"
      "wA..1w\n"
      "w.w+.w\n"
      "w2.g3w\n"
      "wwwwww\n";
  const Level level = parse_level(text);
  CHECK(level.width() == 6);
  CHECK(level.height() == 5);
  CHECK(level.avatar() == Cell{1, 1});
  CHECK(level.key() == Cell{2, 3});
  CHECK(level.goal() == Cell{3, 3});
  CHECK(level.enemy_count() == 3);
  CHECK(level.inner_wall_count() == 1);
  CHECK(to_ascii(level) == text);
  CHECK(parse_level("wwww\r\nwA+w\r\nwg.w\r\nwwww\r\n\n") == parse_level("wwww\nwA+w\nwg.w\nwwww"));
}

TEST_CASE("malformed levels report a location") {
  struct Case {
    const char* text;
    int row;
    int col;
  };
  const std::vector<Case> cases = {
      {"wwww\nwA+w\nwg.\nwwww", 3, 0},   // ragged row
      {"wwww\nwA+w\n.g.w\nwwww", 3, 1},  // open border
      {"wwww\nwA+w\nwgxw\nwwww", 3, 3},  // unknown glyph
      {"wwww\nwA+w\nwAgw\nwwww", 3, 2},  // second avatar
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    try {
      parse_level(c.text);
      FAIL("expected LevelParseError");
    } catch (const LevelParseError& e) {
      CHECK(e.row() == c.row);
      if (c.col > 0) CHECK(e.col() == c.col);
    }
  }
  CHECK_THROWS_AS(parse_level("wwww\nwA.w\nwg.w\nwwww"), LevelParseError);  // no key
  CHECK_THROWS_AS(parse_level(""), LevelParseError);
}

TEST_CASE("moving sets facing and walls block") {
  Rng rng = make_rng(1);
  const GameState s0 = load("wwwww\nwA+gw\nwwwww");
  const GameState s1 = step(s0, Action::Up, rng);
  CHECK(s1.avatar_pos() == s0.avatar_pos());
  CHECK(s1.avatar_facing() == Direction::Up);
  CHECK(s1.tick() == 1);
  CHECK(s1.outcome() == Outcome::Ongoing);
}

TEST_CASE("key then goal wins with the declared scores") {
  Rng rng = make_rng(1);
  GameState s = load("wwwww\nwA+gw\nwwwww");
  s = step(s, Action::Right, rng);
  CHECK(s.has_key());
  CHECK(s.score() == kKeyScore);
  CHECK(s.tile_at({1, 2}) == Tile::Floor);
  s = step(s, Action::Right, rng);
  CHECK(s.outcome() == Outcome::Win);
  CHECK(s.score() == kKeyScore + kWinScore);
  CHECK(state_value(s) == kWinValue);
  CHECK_THROWS_AS(step(s, Action::Nil, rng), TerminalStateError);
}

TEST_CASE("goal without the key is just floor") {
  Rng rng = make_rng(1);
  GameState s = load("wwwww\nwAg+w\nwwwww");
  s = step(s, Action::Right, rng);
  CHECK(s.avatar_pos() == Cell{1, 2});
  CHECK(s.outcome() == Outcome::Ongoing);
  s = step(s, Action::Right, rng);
  s = step(s, Action::Left, rng);
  CHECK(s.outcome() == Outcome::Win);
}

TEST_CASE("use kills the faced enemy") {
  Rng rng = make_rng(3);
  // Slow enemy: it cannot move before the attack lands.
  GameState s = load("wwwwww\nwA3.+w\nw...gw\nwwwwww");
  s.set_avatar_facing(Direction::Right);
  s = step(s, Action::Use, rng);
  CHECK(s.enemies().empty());
  CHECK(s.score() == kKillScore);

  GameState t = load("wwwwww\nwA3.+w\nw...gw\nwwwwww");
  t.set_avatar_facing(Direction::Down);
  t = step(t, Action::Use, rng);
  CHECK(t.enemies().size() == 1);
  CHECK(t.score() == 0);
}

TEST_CASE("walking into an enemy loses") {
  Rng rng = make_rng(3);
  GameState s = load("wwwwww\nwA3.+w\nw...gw\nwwwwww");
  s = step(s, Action::Right, rng);
  CHECK(s.outcome() == Outcome::Loss);
  CHECK(state_value(s) == kLossValue);
}

TEST_CASE("timeout is a loss") {
  Rng rng = make_rng(1);
  GameState s = load("wwwww\nwA+gw\nwwwww", 3);
  for (int i = 0; i < 2; ++i) s = step(s, Action::Nil, rng);
  CHECK(s.outcome() == Outcome::Ongoing);
  CHECK(state_value(s) == 0.0);
  s = step(s, Action::Nil, rng);
  CHECK(s.outcome() == Outcome::Loss);
  CHECK(s.tick() == 3);
}

TEST_CASE("state value passes the score through") {
  Rng rng = make_rng(1);
  GameState s = load("wwwwwww\nwA+.3.w\nw.....w\nw....gw\nwwwwwww");
  s = step(s, Action::Right, rng);
  CHECK(state_value(s) == 1.0);
}

TEST_CASE("enemy periods") {
  const std::vector<std::pair<char, int>> kinds = {{'1', 1}, {'2', 2}, {'3', 4}};
  for (auto [glyph, period] : kinds) {
    CAPTURE(glyph);
    std::string text = "wwwwwwwww\nwA+g....w\nw.......w\nw.......w\nw...X...w\nw.......w\nwwwwwwwww";
    text[text.find('X')] = glyph;
    GameState s = load(text.c_str());
    Rng rng = make_rng(11);
    Cell prev = s.enemies()[0].pos;
    for (int t = 1; t <= 12; ++t) {
      s = step(s, Action::Nil, rng);
      REQUIRE(s.outcome() == Outcome::Ongoing);
      const Cell now = s.enemies()[0].pos;
      CHECK((now != prev) == (t % period == 0));
      prev = now;
    }
  }
}

TEST_CASE("enemies never enter walls, keys or goals and never stack") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng gen = make_rng(seed);
    const Level level = random_solution(gen);
    GameState s = GameState::initial(level, 200);
    Rng rng = make_rng(seed + 1000);
    while (!s.is_terminal()) {
      s = step(s, Action::Nil, rng);
      std::set<Cell> seen;
      for (const Enemy& e : s.enemies()) {
        CHECK(seen.insert(e.pos).second);
        const Tile t = level.at(e.pos);
        CHECK(t != Tile::Wall);
        CHECK(t != Tile::Key);
        CHECK(t != Tile::Goal);
      }
    }
  }
}

TEST_CASE("random play keeps the state invariants") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng = make_rng(seed);
    const Level level = random_solution(rng);
    GameState s = GameState::initial(level, 300);
    while (!s.is_terminal()) {
      const Action a = kActions[uniform_index(rng, kActions.size())];
      const GameState next = step(s, a, rng);
      CHECK(level.at(next.avatar_pos()) != Tile::Wall);
      CHECK(next.tick() == s.tick() + 1);
      CHECK((!s.has_key() || next.has_key()));
      if (next.outcome() == Outcome::Win) {
        CHECK(next.has_key());
        CHECK(next.avatar_pos() == level.goal());
      }
      CHECK(next.score() >= s.score());
      s = next;
    }
  }
}

TEST_CASE("stepping is deterministic given the rng") {
  Rng gen = make_rng(99);
  const Level level = random_solution(gen);
  auto run = [&](std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::vector<GameState> states{GameState::initial(level, 500)};
    while (!states.back().is_terminal()) {
      const Action a = kActions[uniform_index(rng, kActions.size())];
      states.push_back(step(states.back(), a, rng));
    }
    return states;
  };
  CHECK(run(5) == run(5));
}

TEST_CASE("seed derivation is stable") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
  CHECK(derive_seed(7, "game") != derive_seed(7, "agent"));
  CHECK(derive_seed_path(7, "a", 3) == derive_seed(derive_seed(7, "a"), 3));
  CHECK(to_hex(255) == "00000000000000ff");
}

}  // namespace fastdda
