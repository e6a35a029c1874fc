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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "fastdda/level.hpp"
#include "fastdda/rng.hpp"

namespace fastdda {

enum class Action : std::uint8_t { Nil, Up, Down, Left, Right, Use };

inline constexpr std::array<Action, 6> kActions = {
    Action::Nil, Action::Up, Action::Down, Action::Left, Action::Right, Action::Use};

std::string_view to_string(Action a);
std::optional<Direction> movement_direction(Action a);

enum class Outcome : std::uint8_t { Ongoing, Win, Loss };

std::string_view to_string(Outcome o);

// Score table and enemy pacing.
inline constexpr int kKeyScore = 1;
inline constexpr int kKillScore = 2;
inline constexpr int kWinScore = 1;
inline constexpr int kDefaultMaxTicks = 2000;

// Ticks between moves: quick enemies move every tick, normal every second,
// slow every fourth.
constexpr int enemy_period(Tile kind) {
  switch (kind) {
    case Tile::EnemyQuick:
      return 1;
    case Tile::EnemyNormal:
      return 2;
    case Tile::EnemySlow:
      return 4;
    default:
      return 0;
  }
}

inline constexpr double kWinValue = 1e6;
inline constexpr double kLossValue = -1e6;

struct Enemy {
  Cell pos;
  Tile kind = Tile::EnemyNormal;
  int cooldown = 0;

  friend bool operator==(const Enemy&, const Enemy&) = default;
};

// Thrown when a terminal state is stepped.
class TerminalStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Live episode state. A value type: copying is cheap (the static terrain is
// shared and immutable), so planners copy freely.
class GameState {
 public:
  static GameState initial(const Level& level, int max_ticks = kDefaultMaxTicks);

  int width() const { return terrain_->width; }
  int height() const { return terrain_->height; }

  // Composite view: terrain, enemies on top, key gone once picked up.
  Tile tile_at(Cell c) const;
  bool has_enemy_at(Cell c) const;

  Cell avatar_pos() const { return avatar_; }
  Direction avatar_facing() const { return facing_; }
  bool has_key() const { return has_key_; }
  int score() const { return score_; }
  int tick() const { return tick_; }
  int max_ticks() const { return max_ticks_; }
  Outcome outcome() const { return outcome_; }
  bool is_terminal() const { return outcome_ != Outcome::Ongoing; }
  std::span<const Enemy> enemies() const { return enemies_; }

  Cell key_cell() const { return terrain_->key; }
  Cell goal_cell() const { return terrain_->goal; }

  friend GameState step(const GameState& state, Action action, Rng& rng);
  friend bool operator==(const GameState& a, const GameState& b);

  // Test hooks for building specific situations.
  void set_avatar_facing(Direction d) { facing_ = d; }

 private:
  struct Terrain {
    int width = 0;
    int height = 0;
    std::vector<Tile> tiles;  // Floor, Wall, Key or Goal only.
    Cell key;
    Cell goal;

    Tile at(Cell c) const {
      return tiles[static_cast<std::size_t>(c.row * width + c.col)];
    }
  };

  Tile terrain_at(Cell c) const {
    const Tile t = terrain_->at(c);
    return (t == Tile::Key && has_key_) ? Tile::Floor : t;
  }
  bool enemy_can_enter(Cell c) const;

  std::shared_ptr<const Terrain> terrain_;
  std::vector<Enemy> enemies_;  // Row-major order of the starting level.
  Cell avatar_;
  Direction facing_ = Direction::Down;
  bool has_key_ = false;
  int score_ = 0;
  int tick_ = 0;
  int max_ticks_ = kDefaultMaxTicks;
  Outcome outcome_ = Outcome::Ongoing;
};

// Advances one tick: the avatar acts, then enemies whose cooldown elapses
// take a random step, then touch-death and the tick limit are applied.
// Throws TerminalStateError if `state` is already terminal.
GameState step(const GameState& state, Action action, Rng& rng);

// +1e6 on a win, -1e6 on a loss, otherwise the running score.
double state_value(const GameState& state);

}  // namespace fastdda
