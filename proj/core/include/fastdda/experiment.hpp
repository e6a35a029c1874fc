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
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fastdda/adapt.hpp"
#include "fastdda/agents.hpp"
#include "fastdda/archive.hpp"
#include "fastdda/episode.hpp"
#include "fastdda/map_elites.hpp"

namespace fastdda {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownAgentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when archives built under different game rules are combined.
class FingerprintMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdaptationSettings {
  int max_iters = 20;
  double success_threshold = 0.75;
  int repetitions = 10;
  int rollouts = 40;
};

// Everything a run depends on. Defaults reproduce the full-scale setup; the
// desk-scale configs only override keys.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  int threads = 1;  // not part of any fingerprint; results do not depend on it
  std::vector<std::string> roster{"DoNothing", "Random", "OSLA", "GTS",
                                  "RS",        "RHEA",   "MCTS", "OLETS"};
  AgentParams agents;
  EpisodeConfig game;
  BehaviorSpace space;
  MapElitesConfig map_elites;
  Matern52Kernel kernel;
  double beta = 0.03;
  AdaptationSettings adaptation;
};

// JSON config. Missing keys keep their defaults; unknown keys are errors.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Sorted-key JSON of every result-affecting field.
std::string canonical_config_json(const ExperimentConfig& config);
std::string config_fingerprint(const ExperimentConfig& config);
// Game rules only: tick limit, budget, scoring, enemy pacing, behavior space.
std::string rules_fingerprint(const ExperimentConfig& config);

AdaptConfig make_adapt_config(const ExperimentConfig& config);

std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, std::string_view name);

// Writes `content` to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// ---- evolve --------------------------------------------------------------

inline constexpr const char* kBandsCsvHeader =
    "agent,w_0.8_1.0,w_0.6_0.8,w_0.4_0.6,w_0.2_0.4,w_0.0_0.2,total";
inline constexpr const char* kHeatmapCsvHeader =
    "x_feature,y_feature,x_bin,y_bin,count,mean_win_rate,mean_performance";
inline constexpr const char* kCandidatesCsvHeader =
    "index,generation,parent_cell,cell_id,coverage,leniency,reachability,wins,rollouts,"
    "win_rate,performance,inserted";

std::string bands_csv(const Archive& archive);
std::string heatmap_csv(const Heatmap& map);
std::string candidates_csv(const std::vector<CandidateRecord>& log);

std::string archive_file_name(std::string_view agent_name);

struct EvolveOutput {
  MapElitesResult result;
  std::vector<std::filesystem::path> files;
};

// Runs MAP-Elites for `agent_name` and writes archive_<agent>.json,
// bands_<agent>.csv, candidates_<agent>.csv and one heatmap CSV per feature
// pair into out_dir.
EvolveOutput cmd_evolve(const ExperimentConfig& config, std::string_view agent_name,
                        const std::filesystem::path& out_dir);

// ---- matrix --------------------------------------------------------------

struct MatrixTarget {
  std::string name;
  std::shared_ptr<const Agent> agent;
};

struct MatrixEntry {
  std::string prior;
  std::string target;
  std::vector<AdaptationTrace> runs;

  int repetitions() const { return static_cast<int>(runs.size()); }
  int successes() const;
  // Mean iterations over successful runs only; NaN when none succeeded.
  double mean_iterations() const;
};

struct MatrixResult {
  std::vector<MatrixEntry> entries;  // prior-major
};

inline constexpr const char* kMatrixCsvHeader =
    "prior,target,repetitions,successes,mean_iterations";

// Runs `repetitions` adaptations for every (prior, target) pair. Run r of
// (p, t) is seeded with derive_seed_path(seed, "matrix", p, t, r). Every
// prior must carry the config's rules fingerprint.
MatrixResult run_matrix(const ExperimentConfig& config, const std::vector<Archive>& priors,
                        const std::vector<MatrixTarget>& targets);

std::string matrix_csv(const MatrixResult& result);
std::string iterations_csv(const MatrixResult& result);
std::string run_id(const std::string& prior, const std::string& target, int repetition);

Archive load_archive(const std::filesystem::path& path);

// Loads archive_<prior>.json for each prior from archives_dir (plus the
// baseline built from archive_DoNothing.json when requested), runs the
// matrix and writes matrix.csv, iterations.csv and traces/<run_id>.json.
MatrixResult cmd_matrix(const ExperimentConfig& config, const std::filesystem::path& archives_dir,
                        const std::vector<std::string>& priors,
                        const std::vector<std::string>& targets,
                        const std::filesystem::path& out_dir, bool include_baseline);

// ---- bands / eval ----------------------------------------------------------

std::string cmd_bands(const std::filesystem::path& archive_path);

Level load_level(const std::filesystem::path& path);

Evaluation cmd_eval(const ExperimentConfig& config, const std::filesystem::path& level_path,
                    std::string_view agent_name, int rollouts, std::uint64_t seed);

}  // namespace fastdda
