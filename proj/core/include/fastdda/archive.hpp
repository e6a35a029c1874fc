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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fastdda/level.hpp"
#include "fastdda/level_gen.hpp"

namespace fastdda {

// Win-rate fitness peaking at 60%:
//   p(w) = (5/3) w                          for w <= 0.6
//   p(w) = -(25/4) w^2 + (15/2) w - 5/4     for w >  0.6
// Throws std::domain_error outside [0, 1].
double performance(double win_rate);

// Same function evaluated on wins / rollouts with exact integer arithmetic
// up to a single rounding, so p >= 0.75 holds exactly when the rational win
// rate lies in [0.45, 0.8].
double performance(int wins, int rollouts);

inline constexpr double kTargetWinRate = 0.6;

using CellId = std::array<int, 3>;

// Uniform binning of (coverage, leniency, reachability) after clamping each
// feature to its range.
struct BehaviorSpace {
  std::array<double, 3> lower{0.0, 0.0, 2.0};
  std::array<double, 3> upper{1.0, 9.0, 40.0};
  std::array<int, 3> bins{10, 10, 10};

  CellId cell_index(const BehaviorDescriptor& d) const;
  std::array<double, 3> centroid(const CellId& cell) const;
  // Centroid rescaled so every feature range maps to [0, 1].
  std::array<double, 3> normalized_centroid(const CellId& cell) const;

  friend bool operator==(const BehaviorSpace&, const BehaviorSpace&) = default;
};

std::array<double, 3> as_array(const BehaviorDescriptor& d);

struct Elite {
  Level level;
  BehaviorDescriptor descriptor;
  double win_rate = 0.0;
  double performance = 0.0;
  int eval_count = 0;

  friend bool operator==(const Elite&, const Elite&) = default;
};

// Behavior-performance map: at most one elite per cell, replaced only by a
// strictly better candidate.
class Archive {
 public:
  Archive() = default;
  Archive(std::string agent_name, BehaviorSpace space = {})
      : agent_name_(std::move(agent_name)), space_(space) {}

  const std::string& agent_name() const { return agent_name_; }
  void set_agent_name(std::string name) { agent_name_ = std::move(name); }
  const BehaviorSpace& space() const { return space_; }

  // Config fingerprints stamped by the experiment layer.
  const std::string& fingerprint() const { return fingerprint_; }
  const std::string& rules_fingerprint() const { return rules_fingerprint_; }
  void set_fingerprints(std::string config, std::string rules) {
    fingerprint_ = std::move(config);
    rules_fingerprint_ = std::move(rules);
  }

  // Inserts when the cell is empty or the candidate's performance is strictly
  // higher. Returns true on insertion.
  bool try_insert(Elite candidate);

  // Direct placement, bypassing the improvement rule (deserialization,
  // baseline priors). The elite must map to `cell`.
  void put(const CellId& cell, Elite elite);

  const Elite* find(const CellId& cell) const;
  const std::map<CellId, Elite>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  // Cell with the highest performance, smallest id on ties.
  std::optional<CellId> best_cell() const;

  friend bool operator==(const Archive&, const Archive&) = default;

 private:
  std::string agent_name_;
  BehaviorSpace space_;
  std::string fingerprint_;
  std::string rules_fingerprint_;
  std::map<CellId, Elite> cells_;
};

// Elite counts over the win-rate bands, easy to hard:
// [0.8, 1], [0.6, 0.8), [0.4, 0.6), [0.2, 0.4), [0, 0.2).
using BandCounts = std::array<int, 5>;
BandCounts difficulty_bands(const Archive& archive);
int difficulty_band(double win_rate);

// 2-D projection of the archive onto features (x_dim, y_dim), averaging the
// elites over the remaining feature.
struct HeatmapCell {
  int x_bin = 0;
  int y_bin = 0;
  int count = 0;
  double mean_win_rate = 0.0;
  double mean_performance = 0.0;
};

struct Heatmap {
  int x_dim = 0;
  int y_dim = 1;
  std::vector<HeatmapCell> cells;  // x-major, every bin pair present
};

Heatmap project(const Archive& archive, int x_dim, int y_dim);

inline constexpr std::array<const char*, 3> kFeatureNames = {"coverage", "leniency",
                                                             "reachability"};

// JSON persistence. Per-cell records carry cell_id, centroid, descriptor,
// the level as ASCII, win_rate, performance and eval_count.
std::string archive_to_json(const Archive& archive);
Archive archive_from_json(const std::string& text);

class ArchiveFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fastdda
