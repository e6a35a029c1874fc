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

#include "fastdda/level_gen.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace fastdda {

std::optional<std::vector<Cell>> astar_path(const Level& level, Cell from, Cell to) {
  if (!level.in_bounds(from) || !level.in_bounds(to) ||
      level.at(from) == Tile::Wall || level.at(to) == Tile::Wall) {
    return std::nullopt;
  }
  const int w = level.width();
  const auto idx = [w](Cell c) { return static_cast<std::size_t>(c.row * w + c.col); };
  const std::size_t n = static_cast<std::size_t>(w * level.height());

  constexpr int kUnseen = -1;
  std::vector<int> g(n, kUnseen);
  std::vector<int> parent(n, -1);
  std::vector<bool> closed(n, false);

  // (f, insertion order, cell index); min-heap gives FIFO among equal f.
  using Entry = std::tuple<int, std::uint64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t order = 0;

  g[idx(from)] = 0;
  open.emplace(manhattan(from, to), order++, static_cast<int>(idx(from)));
  while (!open.empty()) {
    const auto [f, ord, ci] = open.top();
    open.pop();
    const auto cu = static_cast<std::size_t>(ci);
    if (closed[cu]) continue;
    closed[cu] = true;
    const Cell cell{ci / w, ci % w};
    if (cell == to) {
      std::vector<Cell> path;
      for (int at = ci; at != -1; at = parent[static_cast<std::size_t>(at)]) {
        path.push_back({at / w, at % w});
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Direction d : kDirections) {
      const Cell next = neighbor(cell, d);
      if (!level.in_bounds(next) || level.at(next) == Tile::Wall) continue;
      const auto ni = idx(next);
      if (closed[ni]) continue;
      const int cost = g[cu] + 1;
      if (g[ni] == kUnseen || cost < g[ni]) {
        g[ni] = cost;
        parent[ni] = ci;
        open.emplace(cost + manhattan(next, to), order++, static_cast<int>(ni));
      }
    }
  }
  return std::nullopt;
}

std::optional<int> path_length(const Level& level, Cell from, Cell to) {
  auto path = astar_path(level, from, to);
  if (!path) return std::nullopt;
  return static_cast<int>(path->size()) - 1;
}

bool is_solvable(const Level& level) {
  const Cell key = level.key();
  return astar_path(level, level.avatar(), key) && astar_path(level, key, level.goal());
}

bool is_well_formed(const Level& level) {
  if (level.width() < 3 || level.height() < 3) return false;
  int keys = 0, goals = 0;
  for (int r = 0; r < level.height(); ++r) {
    for (int c = 0; c < level.width(); ++c) {
      const Tile t = level.at({r, c});
      if (!level.is_interior({r, c}) && t != Tile::Wall) return false;
      keys += t == Tile::Key;
      goals += t == Tile::Goal;
    }
  }
  if (keys != 1 || goals != 1) return false;
  if (!level.is_interior(level.avatar()) || level.at(level.avatar()) != Tile::Floor) {
    return false;
  }
  return is_solvable(level);
}

BehaviorDescriptor behavior_descriptor(const Level& level) {
  const Cell key = level.key();
  const auto to_key = path_length(level, level.avatar(), key);
  const auto to_goal = path_length(level, key, level.goal());
  if (!to_key || !to_goal) {
    throw std::invalid_argument("behavior_descriptor: level is not solvable");
  }
  BehaviorDescriptor d;
  d.leniency = level.enemy_count();
  const int occupied = level.inner_wall_count() + d.leniency + 3;
  d.coverage = static_cast<double>(occupied) / static_cast<double>(level.interior_cells());
  d.reachability = *to_key + *to_goal;
  return d;
}

namespace {

std::vector<Cell> interior_cells(const Level& level) {
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(level.interior_cells()));
  for (int r = 1; r < level.height() - 1; ++r) {
    for (int c = 1; c < level.width() - 1; ++c) cells.push_back({r, c});
  }
  return cells;
}

// Floor cells that hold nothing (no avatar either).
std::vector<Cell> free_cells(const Level& level) {
  std::vector<Cell> cells;
  for (const Cell c : interior_cells(level)) {
    if (level.at(c) == Tile::Floor && c != level.avatar()) cells.push_back(c);
  }
  return cells;
}

Tile random_enemy_kind(Rng& rng) {
  return kEnemyKinds[uniform_index(rng, kEnemyKinds.size())];
}

}  // namespace

GeneratedLevel random_solution_traced(Rng& rng) {
  GenerationSample sample;
  int w = uniform_int(rng, 3, 9);
  int h = uniform_int(rng, 3, 9);
  sample.width = w;
  sample.height = h;
  const int m = std::min(w, h);
  const int e = uniform_int(rng, m / 2, m);
  const int i = m > 3 ? uniform_int(rng, m / 2, m) : 0;
  sample.enemies = e;
  sample.inner_walls = i;

  while (i + e + 3 > (w - 2) * (h - 2)) {
    if (uniform_int(rng, 0, 1) == 0) {
      ++h;
    } else {
      ++w;
    }
  }

  Level level(w, h);
  auto cells = interior_cells(level);
  std::shuffle(cells.begin(), cells.end(), rng);
  level.set_avatar(cells[0]);
  level.set(cells[1], Tile::Key);
  level.set(cells[2], Tile::Goal);

  for (int k = 0; k < e; ++k) {
    const Tile kind = random_enemy_kind(rng);
    const auto options = free_cells(level);
    level.set(options[uniform_index(rng, options.size())], kind);
  }

  // Path cells are reserved so walls can never cut them.
  const Cell key = level.key();
  const Cell goal = level.goal();
  std::vector<bool> reserved(static_cast<std::size_t>(w * h), false);
  for (const auto& leg : {astar_path(level, level.avatar(), key), astar_path(level, key, goal)}) {
    for (const Cell c : *leg) reserved[static_cast<std::size_t>(c.row * w + c.col)] = true;
  }
  std::vector<Cell> available;
  for (const Cell c : free_cells(level)) {
    if (!reserved[static_cast<std::size_t>(c.row * w + c.col)]) available.push_back(c);
  }
  std::shuffle(available.begin(), available.end(), rng);
  const auto walls = std::min<std::size_t>(available.size(), static_cast<std::size_t>(i));
  for (std::size_t k = 0; k < walls; ++k) level.set(available[k], Tile::Wall);

  return {std::move(level), sample};
}

Level random_solution(Rng& rng) { return random_solution_traced(rng).level; }

namespace {

bool row_is_movable(const Level& level, int row) {
  if (level.avatar().row == row) return false;
  for (int c = 1; c < level.width() - 1; ++c) {
    const Tile t = level.at({row, c});
    if (t == Tile::Key || t == Tile::Goal) return false;
  }
  return true;
}

bool col_is_movable(const Level& level, int col) {
  if (level.avatar().col == col) return false;
  for (int r = 1; r < level.height() - 1; ++r) {
    const Tile t = level.at({r, col});
    if (t == Tile::Key || t == Tile::Goal) return false;
  }
  return true;
}

}  // namespace

DimensionChange mutate_dimensions(Level& level, Rng& rng) {
  const int op = uniform_int(rng, 0, 3);
  switch (op) {
    case 0:
      level.insert_row(uniform_int(rng, 1, level.height() - 1));
      return DimensionChange::AddedRow;
    case 1:
      level.insert_col(uniform_int(rng, 1, level.width() - 1));
      return DimensionChange::AddedCol;
    default:
      break;
  }
  const bool rows = op == 2;
  std::vector<int> candidates;
  const int extent = rows ? level.height() : level.width();
  for (int k = 1; k < extent - 1; ++k) {
    if (rows ? row_is_movable(level, k) : col_is_movable(level, k)) candidates.push_back(k);
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (const int k : candidates) {
    Level trial = level;
    if (rows) {
      trial.erase_row(k);
    } else {
      trial.erase_col(k);
    }
    if (is_solvable(trial)) {
      level = std::move(trial);
      return rows ? DimensionChange::RemovedRow : DimensionChange::RemovedCol;
    }
  }
  return DimensionChange::None;
}

int mutate_enemies(Level& level, int delta, Rng& rng) {
  int applied = 0;
  if (delta < 0) {
    std::vector<Cell> enemies;
    for (const Cell c : interior_cells(level)) {
      if (is_enemy(level.at(c))) enemies.push_back(c);
    }
    std::shuffle(enemies.begin(), enemies.end(), rng);
    for (std::size_t k = 0; k < enemies.size() && applied > delta; ++k) {
      level.set(enemies[k], Tile::Floor);
      --applied;
    }
  } else {
    for (; applied < delta; ++applied) {
      const auto options = free_cells(level);
      if (options.empty()) break;
      const Tile kind = random_enemy_kind(rng);
      level.set(options[uniform_index(rng, options.size())], kind);
    }
  }
  return applied;
}

int mutate_walls(Level& level, int delta, Rng& rng) {
  int applied = 0;
  if (delta < 0) {
    std::vector<Cell> walls;
    for (const Cell c : interior_cells(level)) {
      if (level.at(c) == Tile::Wall) walls.push_back(c);
    }
    std::shuffle(walls.begin(), walls.end(), rng);
    for (std::size_t k = 0; k < walls.size() && applied > delta; ++k) {
      level.set(walls[k], Tile::Floor);
      --applied;
    }
    return applied;
  }
  for (; applied < delta; ++applied) {
    auto options = free_cells(level);
    std::shuffle(options.begin(), options.end(), rng);
    bool placed = false;
    for (const Cell c : options) {
      level.set(c, Tile::Wall);
      if (is_solvable(level)) {
        placed = true;
        break;
      }
      level.set(c, Tile::Floor);
    }
    if (!placed) break;
  }
  return applied;
}

Level random_variation(const Level& level, Rng& rng) {
  Level next = level;
  mutate_dimensions(next, rng);
  mutate_enemies(next, uniform_int(rng, -2, 2), rng);
  mutate_walls(next, uniform_int(rng, -2, 2), rng);
  return next;
}

}  // namespace fastdda
