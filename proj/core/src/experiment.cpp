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

#include "fastdda/experiment.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "fastdda/parallel.hpp"

namespace fastdda {

using nlohmann::json;

namespace {

// Reads known keys from a JSON object, rejecting anything unknown.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) throw ConfigError(path_ + ": unknown key '" + key + "'");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

json budget_json(const BudgetSpec& b) {
  return {{"mode", std::string(to_string(b.mode))}, {"limit", b.limit}};
}

json game_json(const EpisodeConfig& g) {
  return {{"max_ticks", g.max_ticks}, {"budget", budget_json(g.budget)}};
}

json space_json(const BehaviorSpace& s) {
  return {{"lower", s.lower}, {"upper", s.upper}, {"bins", s.bins}};
}

json agents_json(const AgentParams& p) {
  return {
      {"OSLA", {{"kill_bonus", p.osla.kill_bonus}}},
      {"RS", {{"playtraces", p.rs.playtraces}, {"depth", p.rs.depth}}},
      {"RHEA",
       {{"population", p.rhea.population},
        {"horizon", p.rhea.horizon},
        {"mutation_rate", p.rhea.mutation_rate},
        {"elites", p.rhea.elites},
        {"tournament", p.rhea.tournament}}},
      {"MCTS", {{"exploration", p.mcts.exploration}, {"rollout_depth", p.mcts.rollout_depth}}},
      {"OLETS",
       {{"exploration", p.olets.exploration},
        {"max_child_weight", p.olets.max_child_weight},
        {"max_depth", p.olets.max_depth}}},
  };
}

json rules_json(const ExperimentConfig& c) {
  return {
      {"game", game_json(c.game)},
      {"behavior_space", space_json(c.space)},
      {"scores", {{"key", kKeyScore}, {"kill", kKillScore}, {"win", kWinScore}}},
      {"enemy_periods",
       {{"quick", enemy_period(Tile::EnemyQuick)},
        {"normal", enemy_period(Tile::EnemyNormal)},
        {"slow", enemy_period(Tile::EnemySlow)}}},
      {"target_win_rate", kTargetWinRate},
  };
}

void read_budget(const json& j, BudgetSpec& b) {
  ObjectReader r(j, "game.budget");
  std::string mode = std::string(to_string(b.mode));
  r.read("mode", mode);
  r.read("limit", b.limit);
  r.finish();
  if (mode == "calls") {
    b.mode = BudgetMode::CallCount;
  } else if (mode == "wallclock_ms") {
    b.mode = BudgetMode::WallClock;
  } else {
    throw ConfigError("game.budget.mode must be 'calls' or 'wallclock_ms'");
  }
  require(b.limit > 0, "game.budget.limit must be positive");
}

void read_agents(const json& j, AgentParams& p) {
  ObjectReader r(j, "agents");
  if (const json* o = r.child("OSLA")) {
    ObjectReader a(*o, "agents.OSLA");
    a.read("kill_bonus", p.osla.kill_bonus);
    a.finish();
  }
  if (const json* o = r.child("RS")) {
    ObjectReader a(*o, "agents.RS");
    a.read("playtraces", p.rs.playtraces);
    a.read("depth", p.rs.depth);
    a.finish();
    require(p.rs.playtraces > 0 && p.rs.depth > 0, "agents.RS: values must be positive");
  }
  if (const json* o = r.child("RHEA")) {
    ObjectReader a(*o, "agents.RHEA");
    a.read("population", p.rhea.population);
    a.read("horizon", p.rhea.horizon);
    a.read("mutation_rate", p.rhea.mutation_rate);
    a.read("elites", p.rhea.elites);
    a.read("tournament", p.rhea.tournament);
    a.finish();
    require(p.rhea.population > 0 && p.rhea.horizon > 0 && p.rhea.tournament > 0 &&
                p.rhea.elites >= 0 && p.rhea.elites < p.rhea.population,
            "agents.RHEA: invalid parameters");
  }
  if (const json* o = r.child("MCTS")) {
    ObjectReader a(*o, "agents.MCTS");
    a.read("exploration", p.mcts.exploration);
    a.read("rollout_depth", p.mcts.rollout_depth);
    a.finish();
    require(p.mcts.rollout_depth > 0, "agents.MCTS.rollout_depth must be positive");
  }
  if (const json* o = r.child("OLETS")) {
    ObjectReader a(*o, "agents.OLETS");
    a.read("exploration", p.olets.exploration);
    a.read("max_child_weight", p.olets.max_child_weight);
    a.read("max_depth", p.olets.max_depth);
    a.finish();
    require(p.olets.max_depth > 0 && p.olets.max_child_weight >= 0.0 &&
                p.olets.max_child_weight <= 1.0,
            "agents.OLETS: invalid parameters");
  }
  r.finish();
}

std::string sanitize(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
      out.push_back(c);
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

// CSV files carry no metadata, so each command also writes a manifest that
// stamps the fingerprints onto everything it produced.
std::string manifest_json(const ExperimentConfig& config, std::string_view command,
                          const std::vector<std::filesystem::path>& files) {
  json names = json::array();
  for (const auto& f : files) names.push_back(f.filename().string());
  const json doc = {
      {"format", "fastdda.manifest/1"},
      {"command", command},
      {"fingerprint", config_fingerprint(config)},
      {"rules_fingerprint", rules_fingerprint(config)},
      {"config", json::parse(canonical_config_json(config))},
      {"files", std::move(names)},
  };
  return doc.dump(2) + "\n";
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig c;
  ObjectReader r(doc, "config");
  r.read("seed", c.seed);
  r.read("threads", c.threads);
  r.read("roster", c.roster);
  if (const json* g = r.child("game")) {
    ObjectReader gr(*g, "game");
    gr.read("max_ticks", c.game.max_ticks);
    if (const json* b = gr.child("budget")) read_budget(*b, c.game.budget);
    gr.finish();
  }
  if (const json* s = r.child("behavior_space")) {
    ObjectReader sr(*s, "behavior_space");
    sr.read("lower", c.space.lower);
    sr.read("upper", c.space.upper);
    sr.read("bins", c.space.bins);
    sr.finish();
  }
  if (const json* m = r.child("map_elites")) {
    ObjectReader mr(*m, "map_elites");
    mr.read("n_generations", c.map_elites.n_generations);
    mr.read("n_init", c.map_elites.n_init);
    mr.read("iters_per_gen", c.map_elites.iters_per_gen);
    mr.read("rollouts", c.map_elites.rollouts);
    mr.finish();
  }
  if (const json* g = r.child("gp")) {
    ObjectReader gr(*g, "gp");
    gr.read("amplitude", c.kernel.amplitude);
    gr.read("lengthscale", c.kernel.lengthscale);
    gr.read("noise_variance", c.kernel.noise_variance);
    gr.read("beta", c.beta);
    gr.finish();
  }
  if (const json* a = r.child("adaptation")) {
    ObjectReader ar(*a, "adaptation");
    ar.read("max_iters", c.adaptation.max_iters);
    ar.read("success_threshold", c.adaptation.success_threshold);
    ar.read("repetitions", c.adaptation.repetitions);
    ar.read("rollouts", c.adaptation.rollouts);
    ar.finish();
  }
  if (const json* a = r.child("agents")) read_agents(*a, c.agents);
  r.finish();

  require(c.game.max_ticks > 0, "game.max_ticks must be positive");
  require(c.threads >= 0, "threads must be >= 0 (0 = all cores)");
  for (std::size_t k = 0; k < 3; ++k) {
    require(c.space.bins[k] > 0 && c.space.upper[k] > c.space.lower[k],
            "behavior_space: bins must be positive and upper > lower");
  }
  try {
    validate(c.map_elites);
    c.kernel.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  require(c.beta >= 0.0, "gp.beta must be >= 0");
  require(c.adaptation.max_iters > 0 && c.adaptation.repetitions > 0 &&
              c.adaptation.rollouts > 0,
          "adaptation: max_iters, repetitions and rollouts must be positive");
  for (const auto& name : c.roster) {
    require(parse_agent_kind(name).has_value(), "roster: unknown agent '" + name + "'");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path));
}

std::string canonical_config_json(const ExperimentConfig& c) {
  const json doc = {
      {"seed", c.seed},
      {"roster", c.roster},
      {"agents", agents_json(c.agents)},
      {"game", game_json(c.game)},
      {"behavior_space", space_json(c.space)},
      {"map_elites",
       {{"n_generations", c.map_elites.n_generations},
        {"n_init", c.map_elites.n_init},
        {"iters_per_gen", c.map_elites.iters_per_gen},
        {"rollouts", c.map_elites.rollouts}}},
      {"gp",
       {{"amplitude", c.kernel.amplitude},
        {"lengthscale", c.kernel.lengthscale},
        {"noise_variance", c.kernel.noise_variance},
        {"beta", c.beta}}},
      {"adaptation",
       {{"max_iters", c.adaptation.max_iters},
        {"success_threshold", c.adaptation.success_threshold},
        {"repetitions", c.adaptation.repetitions},
        {"rollouts", c.adaptation.rollouts}}},
      {"rules", rules_json(c)},
  };
  return doc.dump();
}

std::string config_fingerprint(const ExperimentConfig& config) {
  return to_hex(fnv1a64(canonical_config_json(config)));
}

std::string rules_fingerprint(const ExperimentConfig& config) {
  return to_hex(fnv1a64(rules_json(config).dump()));
}

AdaptConfig make_adapt_config(const ExperimentConfig& config) {
  AdaptConfig a;
  a.kernel = config.kernel;
  a.beta = config.beta;
  a.max_iters = config.adaptation.max_iters;
  a.success_threshold = config.adaptation.success_threshold;
  a.rollouts = config.adaptation.rollouts;
  a.episode = config.game;
  a.threads = config.threads;
  return a;
}

std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, std::string_view name) {
  const auto kind = parse_agent_kind(name);
  if (!kind) throw UnknownAgentError("unknown agent '" + std::string(name) + "'");
  return make_agent(*kind, config.agents);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string bands_csv(const Archive& archive) {
  const auto b = difficulty_bands(archive);
  return fmt::format("{}\n{},{},{},{},{},{},{}\n", kBandsCsvHeader, archive.agent_name(), b[0],
                     b[1], b[2], b[3], b[4], std::accumulate(b.begin(), b.end(), 0));
}

std::string heatmap_csv(const Heatmap& map) {
  std::string out = std::string(kHeatmapCsvHeader) + "\n";
  const auto* xf = kFeatureNames[static_cast<std::size_t>(map.x_dim)];
  const auto* yf = kFeatureNames[static_cast<std::size_t>(map.y_dim)];
  for (const auto& c : map.cells) {
    if (c.count == 0) {
      out += fmt::format("{},{},{},{},0,,\n", xf, yf, c.x_bin, c.y_bin);
    } else {
      out += fmt::format("{},{},{},{},{},{},{}\n", xf, yf, c.x_bin, c.y_bin, c.count,
                         c.mean_win_rate, c.mean_performance);
    }
  }
  return out;
}

std::string candidates_csv(const std::vector<CandidateRecord>& log) {
  std::string out = std::string(kCandidatesCsvHeader) + "\n";
  for (const auto& r : log) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.index, r.generation,
                       r.parent ? format_cell_id(*r.parent) : std::string(),
                       format_cell_id(r.cell), r.descriptor.coverage, r.descriptor.leniency,
                       r.descriptor.reachability, r.evaluation.wins, r.evaluation.rollouts,
                       r.evaluation.win_rate, r.evaluation.performance, r.inserted ? 1 : 0);
  }
  return out;
}

std::string archive_file_name(std::string_view agent_name) {
  return "archive_" + sanitize(agent_name) + ".json";
}

EvolveOutput cmd_evolve(const ExperimentConfig& config, std::string_view agent_name,
                        const std::filesystem::path& out_dir) {
  const auto agent = make_agent(config, agent_name);
  EvolveOutput out;
  out.result = map_elites(*agent, config.map_elites, config.game,
                          derive_seed_path(config.seed, "evolve", agent_name), config.space,
                          config.threads);
  Archive& archive = out.result.archive;
  archive.set_fingerprints(config_fingerprint(config), rules_fingerprint(config));

  const std::string tag = sanitize(agent_name);
  const auto emit = [&](const std::string& file, const std::string& content) {
    const auto path = out_dir / file;
    write_file_atomic(path, content);
    out.files.push_back(path);
  };
  emit(archive_file_name(agent_name), archive_to_json(archive));
  emit("bands_" + tag + ".csv", bands_csv(archive));
  emit("candidates_" + tag + ".csv", candidates_csv(out.result.log));
  for (const auto& [x, y] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    emit(fmt::format("heatmap_{}_{}_{}.csv", tag, kFeatureNames[static_cast<std::size_t>(x)],
                     kFeatureNames[static_cast<std::size_t>(y)]),
         heatmap_csv(project(archive, x, y)));
  }
  emit("manifest_evolve_" + tag + ".json", manifest_json(config, "evolve", out.files));
  return out;
}

int MatrixEntry::successes() const {
  int n = 0;
  for (const auto& r : runs) n += r.success;
  return n;
}

double MatrixEntry::mean_iterations() const {
  int n = 0;
  double sum = 0.0;
  for (const auto& r : runs) {
    if (!r.success) continue;
    ++n;
    sum += r.iterations_used();
  }
  return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

std::string run_id(const std::string& prior, const std::string& target, int repetition) {
  return fmt::format("{}__{}__{}", sanitize(prior), sanitize(target), repetition);
}

MatrixResult run_matrix(const ExperimentConfig& config, const std::vector<Archive>& priors,
                        const std::vector<MatrixTarget>& targets) {
  const std::string rules = rules_fingerprint(config);
  for (const auto& p : priors) {
    if (p.empty()) throw std::invalid_argument("prior archive '" + p.agent_name() + "' is empty");
    if (p.rules_fingerprint() != rules) {
      throw FingerprintMismatch("archive '" + p.agent_name() + "' has rules fingerprint '" +
                                p.rules_fingerprint() + "' but the config expects '" + rules +
                                "'");
    }
  }
  AdaptConfig adapt_config = make_adapt_config(config);
  adapt_config.threads = 1;  // parallelism is across runs
  const std::string fingerprint = config_fingerprint(config);
  const int reps = config.adaptation.repetitions;

  MatrixResult result;
  for (const auto& p : priors) {
    for (const auto& t : targets) {
      MatrixEntry e;
      e.prior = p.agent_name();
      e.target = t.name;
      e.runs.resize(static_cast<std::size_t>(reps));
      result.entries.push_back(std::move(e));
    }
  }
  const std::size_t per_entry = static_cast<std::size_t>(reps);
  parallel_for(result.entries.size() * per_entry, config.threads, [&](std::size_t job) {
    const std::size_t pi = job / per_entry / targets.size();
    const std::size_t ti = (job / per_entry) % targets.size();
    const auto rep = static_cast<std::uint64_t>(job % per_entry);
    const Archive& prior = priors[pi];
    const MatrixTarget& target = targets[ti];
    auto trace = adapt(prior, *target.agent, adapt_config,
                       derive_seed_path(config.seed, "matrix", prior.agent_name(), target.name, rep));
    trace.target_agent = target.name;
    trace.fingerprint = fingerprint;
    result.entries[job / per_entry].runs[rep] = std::move(trace);
  });
  return result;
}

std::string matrix_csv(const MatrixResult& result) {
  std::string out = std::string(kMatrixCsvHeader) + "\n";
  for (const auto& e : result.entries) {
    const double mean = e.mean_iterations();
    out += fmt::format("{},{},{},{},{}\n", e.prior, e.target, e.repetitions(), e.successes(),
                       std::isnan(mean) ? std::string() : fmt::format("{}", mean));
  }
  return out;
}

std::string iterations_csv(const MatrixResult& result) {
  std::string out = std::string(kTraceCsvHeader) + "\n";
  for (const auto& e : result.entries) {
    for (std::size_t r = 0; r < e.runs.size(); ++r) {
      out += trace_csv_rows(run_id(e.prior, e.target, static_cast<int>(r)), e.runs[r]);
    }
  }
  return out;
}

Archive load_archive(const std::filesystem::path& path) {
  return archive_from_json(read_file(path));
}

MatrixResult cmd_matrix(const ExperimentConfig& config, const std::filesystem::path& archives_dir,
                        const std::vector<std::string>& priors,
                        const std::vector<std::string>& targets,
                        const std::filesystem::path& out_dir, bool include_baseline) {
  std::vector<Archive> archives;
  for (const auto& name : priors) {
    const auto path = archives_dir / archive_file_name(name);
    if (!std::filesystem::exists(path)) throw IoError("missing archive file " + path.string());
    archives.push_back(load_archive(path));
  }
  if (include_baseline) {
    const auto path = archives_dir / archive_file_name("DoNothing");
    if (!std::filesystem::exists(path)) {
      throw IoError("baseline needs the DoNothing archive " + path.string());
    }
    Rng rng = make_rng(derive_seed_path(config.seed, "matrix", "baseline"));
    archives.push_back(baseline_prior(load_archive(path), rng));
  }
  std::vector<MatrixTarget> matrix_targets;
  for (const auto& name : targets) {
    matrix_targets.push_back({name, std::shared_ptr<const Agent>(make_agent(config, name))});
  }

  MatrixResult result = run_matrix(config, archives, matrix_targets);
  std::vector<std::filesystem::path> written;
  const auto emit = [&](const std::filesystem::path& path, const std::string& content) {
    write_file_atomic(path, content);
    written.push_back(path);
  };
  emit(out_dir / "matrix.csv", matrix_csv(result));
  emit(out_dir / "iterations.csv", iterations_csv(result));
  for (const auto& e : result.entries) {
    for (std::size_t r = 0; r < e.runs.size(); ++r) {
      write_file_atomic(
          out_dir / "traces" / (run_id(e.prior, e.target, static_cast<int>(r)) + ".json"),
          trace_to_json(e.runs[r]));
    }
  }
  written.push_back(out_dir / "traces");
  emit(out_dir / "manifest_matrix.json", manifest_json(config, "matrix", written));
  return result;
}

std::string cmd_bands(const std::filesystem::path& archive_path) {
  return bands_csv(load_archive(archive_path));
}

Level load_level(const std::filesystem::path& path) { return parse_level(read_file(path)); }

Evaluation cmd_eval(const ExperimentConfig& config, const std::filesystem::path& level_path,
                    std::string_view agent_name, int rollouts, std::uint64_t seed) {
  const Level level = load_level(level_path);
  if (!is_solvable(level)) {
    throw LevelParseError("level is not solvable (no avatar -> key -> goal path)", 0, 0);
  }
  const auto agent = make_agent(config, agent_name);
  return evaluate_level(level, *agent, rollouts, derive_seed_path(seed, "eval"), config.game,
                        config.threads);
}

}  // namespace fastdda
