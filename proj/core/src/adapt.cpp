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

#include "fastdda/adapt.hpp"

#include <fmt/format.h>

#include <json.hpp>
#include <stdexcept>

#include "fastdda/map_elites.hpp"

namespace fastdda {

ArchivePosterior::ArchivePosterior(const Archive& prior, Matern52Kernel kernel)
    : space_(prior.space()), gp_(kernel) {
  for (const auto& [cell, elite] : prior.cells()) prior_mean_.emplace(cell, elite.performance);
}

double ArchivePosterior::prior_mean(const CellId& cell) const {
  auto it = prior_mean_.find(cell);
  if (it == prior_mean_.end()) {
    throw std::out_of_range("ArchivePosterior: cell " + format_cell_id(cell) +
                            " is not occupied in the prior archive");
  }
  return it->second;
}

Prediction ArchivePosterior::predict(const CellId& cell) const {
  return gp_.predict(space_.normalized_centroid(cell), prior_mean(cell));
}

void ArchivePosterior::observe(const CellId& cell, double performance) {
  gp_.add_observation(space_.normalized_centroid(cell), prior_mean(cell), performance);
}

Selection select_next(const Archive& archive, const ArchivePosterior& posterior, double beta) {
  if (archive.empty()) throw std::invalid_argument("select_next: archive is empty");
  if (!(beta >= 0.0)) throw std::invalid_argument("select_next: beta must be >= 0");
  Selection best;
  bool first = true;
  for (const auto& [cell, elite] : archive.cells()) {
    const Prediction p = posterior.predict(cell);
    const double acq = p.mean + beta * p.stddev();
    if (first || acq > best.acquisition) {
      best = {cell, p.mean, p.variance, acq};
      first = false;
    }
  }
  return best;
}

void validate(const AdaptConfig& config) {
  config.kernel.validate();
  if (!(config.beta >= 0.0)) throw std::invalid_argument("adapt: beta must be >= 0");
  if (config.max_iters < 1) throw std::invalid_argument("adapt: max_iters must be >= 1");
  if (config.rollouts < 1) throw std::invalid_argument("adapt: rollouts must be >= 1");
}

AdaptationTrace adapt(const Archive& prior, const Agent& target, const AdaptConfig& config,
                      std::uint64_t seed) {
  validate(config);
  if (prior.empty()) throw std::invalid_argument("adapt: prior archive is empty");
  AdaptationTrace trace;
  trace.prior_agent = prior.agent_name();
  trace.target_agent = std::string(target.name());
  trace.seed = seed;

  ArchivePosterior posterior(prior, config.kernel);
  for (int i = 1; i <= config.max_iters; ++i) {
    const Selection sel = select_next(prior, posterior, config.beta);
    const Elite& elite = *prior.find(sel.cell);
    const Evaluation eval =
        evaluate_level(elite.level, target, config.rollouts,
                       derive_seed(seed, static_cast<std::uint64_t>(i)), config.episode,
                       config.threads);
    trace.steps.push_back({i, sel.cell, elite.level, eval.wins, eval.rollouts, eval.win_rate,
                           eval.performance, sel.mean, std::sqrt(sel.variance),
                           sel.acquisition});
    if (eval.performance >= config.success_threshold) {
      trace.success = true;
      break;
    }
    posterior.observe(sel.cell, eval.performance);
  }
  return trace;
}

Archive baseline_prior(const Archive& source, Rng& rng) {
  Archive out("Baseline (noise)", source.space());
  out.set_fingerprints(source.fingerprint(), source.rules_fingerprint());
  for (const auto& [cell, elite] : source.cells()) {
    Elite copy = elite;
    copy.performance = uniform_real(rng);
    out.put(cell, std::move(copy));
  }
  return out;
}

std::string format_cell_id(const CellId& cell) {
  return fmt::format("{}-{}-{}", cell[0], cell[1], cell[2]);
}

std::string trace_to_json(const AdaptationTrace& trace) {
  using nlohmann::json;
  json steps = json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({
        {"iteration", s.iteration},
        {"cell_id", s.cell},
        {"level", to_ascii(s.level)},
        {"wins", s.wins},
        {"rollouts", s.rollouts},
        {"win_rate", s.win_rate},
        {"performance", s.performance},
        {"posterior_mean", s.posterior_mean},
        {"posterior_stddev", s.posterior_stddev},
        {"acquisition", s.acquisition},
    });
  }
  json doc = {
      {"format", "fastdda.trace/1"},
      {"prior_agent", trace.prior_agent},
      {"target_agent", trace.target_agent},
      {"seed", trace.seed},
      {"fingerprint", trace.fingerprint},
      {"success", trace.success},
      {"iterations_used", trace.iterations_used()},
      {"steps", std::move(steps)},
  };
  return doc.dump(2) + "\n";
}

std::string trace_csv_rows(const std::string& run_id, const AdaptationTrace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const bool hit = trace.success && i + 1 == trace.steps.size();
    out += fmt::format("{},{},{},{},{},{},{}\n", run_id, s.iteration, format_cell_id(s.cell),
                       s.win_rate, s.performance, s.acquisition, hit ? 1 : 0);
  }
  return out;
}

}  // namespace fastdda
