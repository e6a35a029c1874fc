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

#include "fastdda/level.hpp"

#include <algorithm>

namespace fastdda {

Level::Level(int width, int height)
    : width_(width),
      height_(height),
      tiles_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
             Tile::Floor) {
  if (width < 3 || height < 3) {
    throw std::invalid_argument("level must be at least 3x3");
  }
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (!is_interior({r, c})) set({r, c}, Tile::Wall);
    }
  }
}

namespace {

Cell find_first(const Level& level, Tile wanted, const char* what) {
  for (int r = 0; r < level.height(); ++r) {
    for (int c = 0; c < level.width(); ++c) {
      if (level.at({r, c}) == wanted) return {r, c};
    }
  }
  throw std::logic_error(std::string("level has no ") + what);
}

}  // namespace

Cell Level::key() const { return find_first(*this, Tile::Key, "key"); }
Cell Level::goal() const { return find_first(*this, Tile::Goal, "goal"); }

int Level::enemy_count() const {
  return static_cast<int>(std::count_if(tiles_.begin(), tiles_.end(), is_enemy));
}

int Level::inner_wall_count() const {
  int n = 0;
  for (int r = 1; r < height_ - 1; ++r) {
    for (int c = 1; c < width_ - 1; ++c) {
      if (at({r, c}) == Tile::Wall) ++n;
    }
  }
  return n;
}

void Level::insert_row(int before_row) {
  std::vector<Tile> row(static_cast<std::size_t>(width_), Tile::Floor);
  row.front() = Tile::Wall;
  row.back() = Tile::Wall;
  tiles_.insert(tiles_.begin() + static_cast<std::ptrdiff_t>(before_row) * width_,
                row.begin(), row.end());
  ++height_;
  if (avatar_.row >= before_row) ++avatar_.row;
}

void Level::erase_row(int row) {
  auto first = tiles_.begin() + static_cast<std::ptrdiff_t>(row) * width_;
  tiles_.erase(first, first + width_);
  --height_;
  if (avatar_.row > row) --avatar_.row;
}

void Level::insert_col(int before_col) {
  std::vector<Tile> next;
  next.reserve(static_cast<std::size_t>((width_ + 1) * height_));
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (c == before_col) {
        next.push_back(r == 0 || r == height_ - 1 ? Tile::Wall : Tile::Floor);
      }
      next.push_back(at({r, c}));
    }
  }
  tiles_ = std::move(next);
  ++width_;
  if (avatar_.col >= before_col) ++avatar_.col;
}

void Level::erase_col(int col) {
  std::vector<Tile> next;
  next.reserve(static_cast<std::size_t>((width_ - 1) * height_));
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (c != col) next.push_back(at({r, c}));
    }
  }
  tiles_ = std::move(next);
  --width_;
  if (avatar_.col > col) --avatar_.col;
}

LevelParseError::LevelParseError(const std::string& message, int row, int col)
    : std::runtime_error(row > 0 ? message + " at row " + std::to_string(row) +
                                       ", col " + std::to_string(col)
                                 : message),
      row_(row),
      col_(col) {}

char tile_char(Tile t) {
  switch (t) {
    case Tile::Floor:
      return '.';
    case Tile::Wall:
      return 'w';
    case Tile::Key:
      return '+';
    case Tile::Goal:
      return 'g';
    case Tile::EnemyQuick:
      return '1';
    case Tile::EnemyNormal:
      return '2';
    case Tile::EnemySlow:
      return '3';
  }
  return '?';
}

Level parse_level(std::string_view text) {
  std::vector<std::string_view> rows;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    rows.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();

  if (rows.size() < 3) throw LevelParseError("level needs at least 3 rows", 0, 0);
  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.front().size());
  if (width < 3) throw LevelParseError("level needs at least 3 columns", 1, 1);

  Level level(width, height);
  int avatars = 0, keys = 0, goals = 0;
  for (int r = 0; r < height; ++r) {
    const auto& line = rows[static_cast<std::size_t>(r)];
    if (static_cast<int>(line.size()) != width) {
      throw LevelParseError("ragged row: expected " + std::to_string(width) +
                                " columns, got " + std::to_string(line.size()),
                            r + 1, std::min<int>(static_cast<int>(line.size()), width) + 1);
    }
    for (int c = 0; c < width; ++c) {
      const char ch = line[static_cast<std::size_t>(c)];
      const Cell cell{r, c};
      Tile tile = Tile::Floor;
      switch (ch) {
        case 'w':
          tile = Tile::Wall;
          break;
        case '.':
          break;
        case 'A':
          if (++avatars > 1) throw LevelParseError("second avatar in level", r + 1, c + 1);
          level.set_avatar(cell);
          break;
        case '+':
          tile = Tile::Key;
          if (++keys > 1) throw LevelParseError("second key in level", r + 1, c + 1);
          break;
        case 'g':
          tile = Tile::Goal;
          if (++goals > 1) throw LevelParseError("second goal in level", r + 1, c + 1);
          break;
        case '1':
          tile = Tile::EnemyQuick;
          break;
        case '2':
          tile = Tile::EnemyNormal;
          break;
        case '3':
          tile = Tile::EnemySlow;
          break;
        default:
          throw LevelParseError(std::string("unknown tile character '") + ch + "'",
                                r + 1, c + 1);
      }
      if (!level.is_interior(cell) && tile != Tile::Wall) {
        throw LevelParseError("border cell must be a wall", r + 1, c + 1);
      }
      level.set(cell, tile);
    }
  }
  if (avatars != 1) {
    throw LevelParseError("expected exactly one avatar, found " + std::to_string(avatars), 0, 0);
  }
  if (keys != 1) {
    throw LevelParseError("expected exactly one key, found " + std::to_string(keys), 0, 0);
  }
  if (goals != 1) {
    throw LevelParseError("expected exactly one goal, found " + std::to_string(goals), 0, 0);
  }
  return level;
}

std::string to_ascii(const Level& level) {
  std::string out;
  out.reserve(static_cast<std::size_t>((level.width() + 1) * level.height()));
  for (int r = 0; r < level.height(); ++r) {
    for (int c = 0; c < level.width(); ++c) {
      out.push_back(Cell{r, c} == level.avatar() ? 'A' : tile_char(level.at({r, c})));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace fastdda
