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

// fastdda: evolve difficulty-calibrated level archives and adapt them to new
// agents. Run `fastdda --help` for the subcommands.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fastdda/experiment.hpp"
#include "fastdda/level_gen.hpp"

namespace {

using nlohmann::json;

int fail(const std::string& kind, const std::string& message, int code = 1,
         const json& extra = json::object()) {
  json err = {{"kind", kind}, {"message", message}};
  err.update(extra);
  std::cerr << json{{"error", err}}.dump() << "\n";
  return code;
}

std::vector<std::string> or_roster(const std::vector<std::string>& names,
                                   const fastdda::ExperimentConfig& config) {
  return names.empty() ? config.roster : names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast difficulty adaptation: MAP-Elites level archives + GP trial-and-error"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<int> threads_override;
  app.add_option("-c,--config", config_path, "Experiment config (JSON); defaults if omitted");
  app.add_option("--seed", seed_override, "Override the root seed");
  app.add_option("-j,--threads", threads_override, "Worker threads (0 = all cores)");

  std::string agent_name;
  std::string out_dir = ".";

  auto* evolve = app.add_subcommand("evolve", "Run MAP-Elites for one agent");
  evolve->add_option("-a,--agent", agent_name, "Agent name")->required();
  evolve->add_option("-o,--out", out_dir, "Output directory");

  std::string archives_dir = ".";
  std::vector<std::string> priors;
  std::vector<std::string> targets;
  bool baseline = false;
  auto* matrix = app.add_subcommand("matrix", "Run the prior x target adaptation matrix");
  matrix->add_option("--archives", archives_dir, "Directory holding archive_<agent>.json files");
  matrix->add_option("--priors", priors, "Prior agents (default: roster)")->delimiter(',');
  matrix->add_option("--targets", targets, "Target agents (default: roster)")->delimiter(',');
  matrix->add_flag("--baseline", baseline, "Add the random-performance DoNothing baseline prior");
  matrix->add_option("-o,--out", out_dir, "Output directory");

  std::string archive_path;
  std::string bands_out;
  auto* bands = app.add_subcommand("bands", "Count archive elites per win-rate band");
  bands->add_option("--archive", archive_path, "Archive JSON")->required();
  bands->add_option("-o,--out", bands_out, "Write the CSV here instead of stdout");

  std::string level_path;
  std::optional<int> rollouts;
  std::uint64_t eval_seed = 0;
  auto* eval = app.add_subcommand("eval", "Estimate an agent's win rate on one level");
  eval->add_option("--level", level_path, "ASCII level file")->required();
  eval->add_option("-a,--agent", agent_name, "Agent name")->required();
  eval->add_option("-n,--rollouts", rollouts, "Number of rollouts (default: adaptation.rollouts)");
  eval->add_option("--eval-seed", eval_seed, "Seed for the rollouts");

  auto* validate = app.add_subcommand("validate-level", "Parse and check a level file");
  validate->add_option("--level", level_path, "ASCII level file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    fastdda::ExperimentConfig config;
    if (!config_path.empty()) config = fastdda::load_config(config_path);
    if (seed_override) config.seed = *seed_override;
    if (threads_override) config.threads = *threads_override;

    if (*evolve) {
      const auto out = fastdda::cmd_evolve(config, agent_name, out_dir);
      json files = json::array();
      for (const auto& f : out.files) files.push_back(f.string());
      const auto b = fastdda::difficulty_bands(out.result.archive);
      std::cout << json{{"agent", agent_name},
                        {"elites", out.result.archive.size()},
                        {"bands", b},
                        {"files", files}}
                       .dump(2)
                << "\n";
    } else if (*matrix) {
      const auto result = fastdda::cmd_matrix(config, archives_dir, or_roster(priors, config),
                                              or_roster(targets, config), out_dir, baseline);
      std::cout << fastdda::matrix_csv(result);
    } else if (*bands) {
      const auto csv = fastdda::cmd_bands(archive_path);
      if (bands_out.empty()) {
        std::cout << csv;
      } else {
        fastdda::write_file_atomic(bands_out, csv);
      }
    } else if (*eval) {
      const auto e = fastdda::cmd_eval(config, level_path, agent_name,
                                       rollouts.value_or(config.adaptation.rollouts), eval_seed);
      std::cout << json{{"agent", agent_name},
                        {"wins", e.wins},
                        {"rollouts", e.rollouts},
                        {"win_rate", e.win_rate},
                        {"performance", e.performance}}
                       .dump()
                << "\n";
    } else if (*validate) {
      const auto level = fastdda::load_level(level_path);
      if (!fastdda::is_solvable(level)) {
        return fail("level", "level is not solvable (no avatar -> key -> goal path)");
      }
      const auto d = fastdda::behavior_descriptor(level);
      std::cout << json{{"valid", true},
                        {"width", level.width()},
                        {"height", level.height()},
                        {"descriptor",
                         {{"coverage", d.coverage},
                          {"leniency", d.leniency},
                          {"reachability", d.reachability}}},
                        {"cell_id", config.space.cell_index(d)}}
                       .dump()
                << "\n";
    }
  } catch (const fastdda::LevelParseError& e) {
    return fail("level", e.what(), 1, {{"row", e.row()}, {"col", e.col()}});
  } catch (const fastdda::ConfigError& e) {
    return fail("config", e.what());
  } catch (const fastdda::UnknownAgentError& e) {
    return fail("agent", e.what());
  } catch (const fastdda::ArchiveFormatError& e) {
    return fail("archive", e.what());
  } catch (const fastdda::FingerprintMismatch& e) {
    return fail("fingerprint", e.what());
  } catch (const fastdda::IoError& e) {
    return fail("io", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
