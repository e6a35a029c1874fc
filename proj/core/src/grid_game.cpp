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

#include "fastdda/grid_game.hpp"

#include <algorithm>

namespace fastdda {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Nil:
      return "Nil";
    case Action::Up:
      return "Up";
    case Action::Down:
      return "Down";
    case Action::Left:
      return "Left";
    case Action::Right:
      return "Right";
    case Action::Use:
      return "Use";
  }
  return "?";
}

std::optional<Direction> movement_direction(Action a) {
  switch (a) {
    case Action::Up:
      return Direction::Up;
    case Action::Down:
      return Direction::Down;
    case Action::Left:
      return Direction::Left;
    case Action::Right:
      return Direction::Right;
    default:
      return std::nullopt;
  }
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Ongoing:
      return "Ongoing";
    case Outcome::Win:
      return "Win";
    case Outcome::Loss:
      return "Loss";
  }
  return "?";
}

GameState GameState::initial(const Level& level, int max_ticks) {
  if (max_ticks <= 0) throw std::invalid_argument("max_ticks must be positive");
  auto terrain = std::make_shared<Terrain>();
  terrain->width = level.width();
  terrain->height = level.height();
  terrain->tiles.assign(level.tiles().begin(), level.tiles().end());

  GameState state;
  for (int r = 0; r < level.height(); ++r) {
    for (int c = 0; c < level.width(); ++c) {
      const Cell cell{r, c};
      Tile& t = terrain->tiles[static_cast<std::size_t>(r * level.width() + c)];
      if (is_enemy(t)) {
        state.enemies_.push_back({cell, t, enemy_period(t)});
        t = Tile::Floor;
      } else if (t == Tile::Key) {
        terrain->key = cell;
      } else if (t == Tile::Goal) {
        terrain->goal = cell;
      }
    }
  }
  state.terrain_ = std::move(terrain);
  state.avatar_ = level.avatar();
  state.max_ticks_ = max_ticks;
  return state;
}

bool GameState::has_enemy_at(Cell c) const {
  return std::any_of(enemies_.begin(), enemies_.end(),
                     [c](const Enemy& e) { return e.pos == c; });
}

Tile GameState::tile_at(Cell c) const {
  for (const auto& e : enemies_) {
    if (e.pos == c) return e.kind;
  }
  return terrain_at(c);
}

bool GameState::enemy_can_enter(Cell c) const {
  const Tile t = terrain_at(c);
  return t != Tile::Wall && t != Tile::Key && t != Tile::Goal;
}

bool operator==(const GameState& a, const GameState& b) {
  return a.avatar_ == b.avatar_ && a.facing_ == b.facing_ &&
         a.has_key_ == b.has_key_ && a.score_ == b.score_ &&
         a.tick_ == b.tick_ && a.max_ticks_ == b.max_ticks_ &&
         a.outcome_ == b.outcome_ && a.enemies_ == b.enemies_ &&
         (a.terrain_ == b.terrain_ ||
          (a.terrain_->width == b.terrain_->width &&
           a.terrain_->tiles == b.terrain_->tiles));
}

GameState step(const GameState& state, Action action, Rng& rng) {
  if (state.is_terminal()) {
    throw TerminalStateError("step() called on a terminal state (outcome " +
                             std::string(to_string(state.outcome())) + ")");
  }
  GameState next = state;

  // Avatar phase.
  if (auto dir = movement_direction(action)) {
    next.facing_ = *dir;
    const Cell target = neighbor(next.avatar_, *dir);
    const Tile t = next.terrain_at(target);
    if (t != Tile::Wall) {
      next.avatar_ = target;
      if (t == Tile::Key) {
        next.has_key_ = true;
        next.score_ += kKeyScore;
      } else if (t == Tile::Goal && next.has_key_) {
        next.score_ += kWinScore;
        next.outcome_ = Outcome::Win;
      }
    }
  } else if (action == Action::Use) {
    const Cell target = neighbor(next.avatar_, next.facing_);
    auto it = std::find_if(next.enemies_.begin(), next.enemies_.end(),
                           [target](const Enemy& e) { return e.pos == target; });
    if (it != next.enemies_.end()) {
      next.enemies_.erase(it);
      next.score_ += kKillScore;
    }
  }

  if (next.outcome_ == Outcome::Ongoing && next.has_enemy_at(next.avatar_)) {
    next.outcome_ = Outcome::Loss;
  }

  // Enemy phase.
  if (next.outcome_ == Outcome::Ongoing) {
    std::array<Cell, 4> options{};
    for (std::size_t i = 0; i < next.enemies_.size(); ++i) {
      Enemy& enemy = next.enemies_[i];
      if (--enemy.cooldown > 0) continue;
      enemy.cooldown = enemy_period(enemy.kind);
      std::size_t n = 0;
      for (Direction d : kDirections) {
        const Cell c = neighbor(enemy.pos, d);
        if (next.enemy_can_enter(c)) options[n++] = c;
      }
      if (n == 0) continue;
      const Cell target = options[uniform_index(rng, n)];
      if (next.has_enemy_at(target)) continue;  // no stacking
      enemy.pos = target;
    }
    if (next.has_enemy_at(next.avatar_)) next.outcome_ = Outcome::Loss;
  }

  ++next.tick_;
  if (next.outcome_ == Outcome::Ongoing && next.tick_ >= next.max_ticks_) {
    next.outcome_ = Outcome::Loss;
  }
  return next;
}

double state_value(const GameState& state) {
  switch (state.outcome()) {
    case Outcome::Win:
      return kWinValue;
    case Outcome::Loss:
      return kLossValue;
    case Outcome::Ongoing:
      break;
  }
  return static_cast<double>(state.score());
}

}  // namespace fastdda
