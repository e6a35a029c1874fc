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

#include <optional>
#include <vector>

#include "fastdda/level.hpp"
#include "fastdda/rng.hpp"

namespace fastdda {

// Shortest 4-connected path over non-Wall cells (enemies do not block),
// inclusive of both endpoints, or nullopt when disconnected. Neighbors are
// expanded Up, Down, Left, Right and equal f-scores pop in insertion order,
// so the returned path is deterministic.
std::optional<std::vector<Cell>> astar_path(const Level& level, Cell from, Cell to);

// Number of steps of the A* path, or nullopt.
std::optional<int> path_length(const Level& level, Cell from, Cell to);

// avatar -> key and key -> goal are both connected.
bool is_solvable(const Level& level);

// Border walls, exactly one key and goal, avatar on a non-wall interior cell
// distinct from key and goal, and solvable.
bool is_well_formed(const Level& level);

struct BehaviorDescriptor {
  double coverage = 0.0;  // occupied interior cells / interior cells
  int leniency = 0;       // number of enemies
  int reachability = 0;   // |A*(avatar, key)| + |A*(key, goal)| in steps

  friend bool operator==(const BehaviorDescriptor&, const BehaviorDescriptor&) = default;
};

// Throws std::invalid_argument for an unsolvable level.
BehaviorDescriptor behavior_descriptor(const Level& level);

// Values sampled before the room check grows the level.
struct GenerationSample {
  int width = 0;
  int height = 0;
  int enemies = 0;
  int inner_walls = 0;
};

struct GeneratedLevel {
  Level level;
  GenerationSample sample;
};

GeneratedLevel random_solution_traced(Rng& rng);
Level random_solution(Rng& rng);

// The three mutation sub-steps, exposed individually for testing.
enum class DimensionChange { None, AddedRow, RemovedRow, AddedCol, RemovedCol };

// Adds or removes one row or column. Removal only considers rows / columns
// without the avatar, key or goal, and never breaks solvability; returns None
// when the sampled change is impossible.
DimensionChange mutate_dimensions(Level& level, Rng& rng);

// Adds `delta` enemies of random kinds on free floor cells (as many as fit)
// or removes -delta random enemies (as many as exist). Returns the applied
// change in enemy count.
int mutate_enemies(Level& level, int delta, Rng& rng);

// Adds or removes inner walls like mutate_enemies. Added walls never break
// avatar -> key -> goal connectivity. Returns the applied change.
int mutate_walls(Level& level, int delta, Rng& rng);

// One dimension change, then an enemy delta and a wall delta each drawn
// uniformly from [-2, 2].
Level random_variation(const Level& level, Rng& rng);

}  // namespace fastdda
