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
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fastdda {

enum class Tile : std::uint8_t {
  Floor,
  Wall,
  Key,
  Goal,
  EnemySlow,
  EnemyNormal,
  EnemyQuick,
};

inline constexpr std::array<Tile, 3> kEnemyKinds = {
    Tile::EnemySlow, Tile::EnemyNormal, Tile::EnemyQuick};

constexpr bool is_enemy(Tile t) {
  return t == Tile::EnemySlow || t == Tile::EnemyNormal || t == Tile::EnemyQuick;
}

enum class Direction : std::uint8_t { Up, Down, Left, Right };

// Neighbor order used everywhere a deterministic scan is needed.
inline constexpr std::array<Direction, 4> kDirections = {
    Direction::Up, Direction::Down, Direction::Left, Direction::Right};

struct Cell {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

constexpr Cell neighbor(Cell c, Direction d) {
  switch (d) {
    case Direction::Up:
      return {c.row - 1, c.col};
    case Direction::Down:
      return {c.row + 1, c.col};
    case Direction::Left:
      return {c.row, c.col - 1};
    case Direction::Right:
      return {c.row, c.col + 1};
  }
  return c;
}

constexpr int manhattan(Cell a, Cell b) {
  return (a.row > b.row ? a.row - b.row : b.row - a.row) +
         (a.col > b.col ? a.col - b.col : b.col - a.col);
}

// A rectangular dungeon. The avatar start is stored next to the tile grid,
// never as a tile. `width` counts columns and `height` counts rows, both
// including the wall border.
class Level {
 public:
  Level() = default;
  // Bordered level with an all-Floor interior and the avatar at (1, 1).
  Level(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int interior_cells() const { return (width_ - 2) * (height_ - 2); }

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }
  bool is_interior(Cell c) const {
    return c.row > 0 && c.col > 0 && c.row < height_ - 1 && c.col < width_ - 1;
  }

  Tile at(Cell c) const { return tiles_[index(c)]; }
  void set(Cell c, Tile t) { tiles_[index(c)] = t; }

  Cell avatar() const { return avatar_; }
  void set_avatar(Cell c) { avatar_ = c; }

  // First Key / Goal tile in row-major order. Throws if absent.
  Cell key() const;
  Cell goal() const;

  int enemy_count() const;
  int inner_wall_count() const;

  std::span<const Tile> tiles() const { return tiles_; }

  // Row / column surgery used by mutation. Indices address the full grid and
  // must be interior rows / columns. The avatar is shifted to stay on its
  // cell; callers must not remove the avatar's own row / column.
  void insert_row(int before_row);
  void erase_row(int row);
  void insert_col(int before_col);
  void erase_col(int col);

  friend bool operator==(const Level&, const Level&) = default;

 private:
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Tile> tiles_;
  Cell avatar_{1, 1};
};

// Malformed ASCII level. row and col are 1-based; 0 means "whole level".
class LevelParseError : public std::runtime_error {
 public:
  LevelParseError(const std::string& message, int row, int col);
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

// ASCII format, one character per cell:
//   w wall   . floor   A avatar   + key   g goal
//   1 quick enemy   2 normal enemy   3 slow enemy
// Rows are newline separated (a trailing newline and '\r' are tolerated),
// the grid must be rectangular, the border must be all walls and there must
// be exactly one avatar, key and goal.
Level parse_level(std::string_view text);
std::string to_ascii(const Level& level);

char tile_char(Tile t);

}  // namespace fastdda
