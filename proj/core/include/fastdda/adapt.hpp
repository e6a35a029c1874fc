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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fastdda/agent.hpp"
#include "fastdda/archive.hpp"
#include "fastdda/episode.hpp"
#include "fastdda/gaussian_process.hpp"

namespace fastdda {

// GP posterior over the occupied cells of a prior archive. The prior mean of
// a cell is the prior archive's performance there; cells are embedded at
// their normalized centroids.
class ArchivePosterior {
 public:
  ArchivePosterior(const Archive& prior, Matern52Kernel kernel);

  double prior_mean(const CellId& cell) const;
  Prediction predict(const CellId& cell) const;
  void observe(const CellId& cell, double performance);

  std::size_t observations() const { return gp_.size(); }
  const GaussianProcess& gp() const { return gp_; }

 private:
  BehaviorSpace space_;
  std::map<CellId, double> prior_mean_;
  GaussianProcess gp_;
};

struct Selection {
  CellId cell{};
  double mean = 0.0;
  double variance = 0.0;
  double acquisition = 0.0;
};

// argmax over the archive's occupied cells of mean + beta * stddev; the
// lexicographically smallest cell wins ties. Throws on an empty archive.
Selection select_next(const Archive& archive, const ArchivePosterior& posterior, double beta);

struct AdaptConfig {
  Matern52Kernel kernel;
  double beta = 0.03;
  int max_iters = 20;
  double success_threshold = 0.75;
  int rollouts = 40;
  EpisodeConfig episode;
  int threads = 1;
};

void validate(const AdaptConfig& config);

struct AdaptationStep {
  int iteration = 0;  // 1-based
  CellId cell{};
  Level level;
  int wins = 0;
  int rollouts = 0;
  double win_rate = 0.0;
  double performance = 0.0;
  double posterior_mean = 0.0;
  double posterior_stddev = 0.0;
  double acquisition = 0.0;
};

struct AdaptationTrace {
  std::string prior_agent;
  std::string target_agent;
  std::uint64_t seed = 0;
  std::string fingerprint;
  std::vector<AdaptationStep> steps;
  bool success = false;

  int iterations_used() const { return static_cast<int>(steps.size()); }
};

// Intelligent trial and error: repeatedly serve the acquisition-maximizing
// elite to `target`, stopping at the first level whose performance reaches
// the success threshold or after max_iters levels. Iteration i evaluates
// with derive_seed(seed, i).
AdaptationTrace adapt(const Archive& prior, const Agent& target, const AdaptConfig& config,
                      std::uint64_t seed);

// Same cells and levels as `source`, with performances replaced by
// independent U[0, 1] draws.
Archive baseline_prior(const Archive& source, Rng& rng);

std::string trace_to_json(const AdaptationTrace& trace);

// Per-iteration CSV rows (no header) matching kTraceCsvHeader.
inline constexpr const char* kTraceCsvHeader =
    "run_id,iteration,cell_id,win_rate,performance,acq_value,success";
std::string trace_csv_rows(const std::string& run_id, const AdaptationTrace& trace);

std::string format_cell_id(const CellId& cell);

}  // namespace fastdda
