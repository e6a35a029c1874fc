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

#include "fastdda/archive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fastdda {

double performance(double win_rate) {
  if (!(win_rate >= 0.0 && win_rate <= 1.0)) {
    throw std::domain_error("performance: win rate must lie in [0, 1]");
  }
  if (win_rate <= kTargetWinRate) return 5.0 * win_rate / 3.0;
  return (-25.0 * win_rate * win_rate + 30.0 * win_rate - 5.0) / 4.0;
}

double performance(int wins, int rollouts) {
  if (rollouts <= 0 || wins < 0 || wins > rollouts) {
    throw std::domain_error("performance: need 0 <= wins <= rollouts and rollouts > 0");
  }
  const auto k = static_cast<std::int64_t>(wins);
  const auto n = static_cast<std::int64_t>(rollouts);
  // k/n <= 3/5  <=>  5k <= 3n
  if (5 * k <= 3 * n) {
    return static_cast<double>(5 * k) / static_cast<double>(3 * n);
  }
  // (-25k^2 + 30kn - 5n^2) / (4n^2)
  return static_cast<double>(-25 * k * k + 30 * k * n - 5 * n * n) /
         static_cast<double>(4 * n * n);
}

std::array<double, 3> as_array(const BehaviorDescriptor& d) {
  return {d.coverage, static_cast<double>(d.leniency), static_cast<double>(d.reachability)};
}

CellId BehaviorSpace::cell_index(const BehaviorDescriptor& d) const {
  const auto values = as_array(d);
  CellId id{};
  for (std::size_t k = 0; k < 3; ++k) {
    const double v = std::clamp(values[k], lower[k], upper[k]);
    const double t = (v - lower[k]) / (upper[k] - lower[k]);
    id[k] = std::clamp(static_cast<int>(std::floor(t * bins[k])), 0, bins[k] - 1);
  }
  return id;
}

std::array<double, 3> BehaviorSpace::centroid(const CellId& cell) const {
  std::array<double, 3> c{};
  for (std::size_t k = 0; k < 3; ++k) {
    c[k] = lower[k] + (cell[k] + 0.5) * (upper[k] - lower[k]) / bins[k];
  }
  return c;
}

std::array<double, 3> BehaviorSpace::normalized_centroid(const CellId& cell) const {
  std::array<double, 3> c{};
  for (std::size_t k = 0; k < 3; ++k) c[k] = (cell[k] + 0.5) / bins[k];
  return c;
}

bool Archive::try_insert(Elite candidate) {
  const CellId cell = space_.cell_index(candidate.descriptor);
  auto it = cells_.find(cell);
  if (it == cells_.end()) {
    cells_.emplace(cell, std::move(candidate));
    return true;
  }
  if (it->second.performance < candidate.performance) {
    it->second = std::move(candidate);
    return true;
  }
  return false;
}

void Archive::put(const CellId& cell, Elite elite) {
  if (space_.cell_index(elite.descriptor) != cell) {
    throw std::invalid_argument("Archive::put: descriptor does not map to the given cell");
  }
  cells_[cell] = std::move(elite);
}

const Elite* Archive::find(const CellId& cell) const {
  auto it = cells_.find(cell);
  return it == cells_.end() ? nullptr : &it->second;
}

std::optional<CellId> Archive::best_cell() const {
  std::optional<CellId> best;
  double best_perf = 0.0;
  for (const auto& [cell, elite] : cells_) {
    if (!best || elite.performance > best_perf) {
      best = cell;
      best_perf = elite.performance;
    }
  }
  return best;
}

int difficulty_band(double win_rate) {
  if (win_rate >= 0.8) return 0;
  if (win_rate >= 0.6) return 1;
  if (win_rate >= 0.4) return 2;
  if (win_rate >= 0.2) return 3;
  return 4;
}

BandCounts difficulty_bands(const Archive& archive) {
  BandCounts counts{};
  for (const auto& [cell, elite] : archive.cells()) {
    ++counts[static_cast<std::size_t>(difficulty_band(elite.win_rate))];
  }
  return counts;
}

Heatmap project(const Archive& archive, int x_dim, int y_dim) {
  if (x_dim == y_dim || x_dim < 0 || y_dim < 0 || x_dim > 2 || y_dim > 2) {
    throw std::invalid_argument("project: need two distinct feature indices in [0, 2]");
  }
  const auto& bins = archive.space().bins;
  const int nx = bins[static_cast<std::size_t>(x_dim)];
  const int ny = bins[static_cast<std::size_t>(y_dim)];
  Heatmap map;
  map.x_dim = x_dim;
  map.y_dim = y_dim;
  map.cells.resize(static_cast<std::size_t>(nx * ny));
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      auto& c = map.cells[static_cast<std::size_t>(x * ny + y)];
      c.x_bin = x;
      c.y_bin = y;
    }
  }
  for (const auto& [cell, elite] : archive.cells()) {
    auto& c = map.cells[static_cast<std::size_t>(cell[static_cast<std::size_t>(x_dim)] * ny +
                                                 cell[static_cast<std::size_t>(y_dim)])];
    ++c.count;
    c.mean_win_rate += elite.win_rate;
    c.mean_performance += elite.performance;
  }
  for (auto& c : map.cells) {
    if (c.count > 0) {
      c.mean_win_rate /= c.count;
      c.mean_performance /= c.count;
    }
  }
  return map;
}

}  // namespace fastdda
