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
#include <functional>
#include <optional>
#include <vector>

#include "fastdda/agent.hpp"
#include "fastdda/archive.hpp"
#include "fastdda/episode.hpp"

namespace fastdda {

struct Evaluation {
  int wins = 0;
  int rollouts = 0;
  double win_rate = 0.0;
  double performance = 0.0;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

// Plays `rollouts` episodes; rollout k uses derive_seed(seed, k). Rollouts
// run on up to `threads` workers and the result does not depend on it.
Evaluation evaluate_level(const Level& level, const Agent& agent, int rollouts,
                          std::uint64_t seed, const EpisodeConfig& episode, int threads = 1);

struct MapElitesConfig {
  int n_generations = 10;
  int n_init = 100;
  int iters_per_gen = 50;
  int rollouts = 40;

  int total_candidates() const { return n_init + n_generations * iters_per_gen; }
};

void validate(const MapElitesConfig& config);

// One entry per evaluated candidate, in processing order.
struct CandidateRecord {
  int index = 0;
  int generation = 0;  // 0 for the random initialization
  std::optional<CellId> parent;
  Level level;
  BehaviorDescriptor descriptor;
  CellId cell{};
  Evaluation evaluation;
  bool inserted = false;
};

struct MapElitesResult {
  Archive archive;
  std::vector<CandidateRecord> log;
};

// Flat candidate stream: the first n_init candidates come from
// random_solution(), every later one mutates a uniformly chosen current
// elite. Candidate j is evaluated with derive_seed_path(seed, "candidate", j).
// `on_candidate`, if set, observes each record after insertion.
MapElitesResult map_elites(const Agent& agent, const MapElitesConfig& config,
                           const EpisodeConfig& episode, std::uint64_t seed,
                           BehaviorSpace space = {}, int threads = 1,
                           const std::function<void(const CandidateRecord&)>& on_candidate = {});

}  // namespace fastdda
