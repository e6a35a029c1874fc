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


#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fastdda/adapt.hpp"
#include "fastdda/agents.hpp"
#include "fastdda/gaussian_process.hpp"
#include "oracles.hpp"

namespace fastdda {

namespace {

constexpr double kMatern52AtOne = 0.5239941088318203105927132507604956846014;
constexpr double kMatern52AtHalf = 0.8286491424181253130751012484254814108869;

GpPoint random_point(Rng& rng) { return {uniform_real(rng), uniform_real(rng), uniform_real(rng)}; }

// Enemy-free levels whose descriptors land in distinct cells.
std::vector<Level> distinct_levels() {
  return {
      parse_level("wwwww\nwA+gw\nwwwww"),
      parse_level("wwwwww\nwA.+gw\nwwwwww"),
      parse_level("wwwwwww\nwA..+gw\nwwwwwww"),
      parse_level("wwwwwwww\nwA...+gw\nw......w\nw......w\nwwwwwwww"),
      parse_level("wwwwwwwwww\nwA......+w\nw........w\nw.......gw\nwwwwwwwwww"),
  };
}

Archive archive_with(const std::vector<Level>& levels, const std::vector<double>& perf,
                     const std::string& name = "P") {
  Archive archive(name);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto d = behavior_descriptor(levels[i]);
    archive.put(archive.space().cell_index(d), {levels[i], d, 0.5, perf[i], 40});
  }
  return archive;
}

}  // namespace

TEST_CASE("matern 5/2 closed form") {
  const Matern52Kernel k{1.0, 1.0, 0.1};
  CHECK(k.at(0.0) == 1.0);
  CHECK(std::abs(k.at(1.0) - kMatern52AtOne) <= 1e-12);
  CHECK(std::abs(k.at(0.5) - kMatern52AtHalf) <= 1e-12);
  CHECK(std::abs(k.at(1.0) - static_cast<double>(testing::matern52_reference(1.0L))) <= 1e-15);
  CHECK(k.at(20.0) < 1e-15);
  CHECK(k.at(50.0) >= 0.0);

  const Matern52Kernel wide{2.0, 3.0, 0.0};
  CHECK(wide({0, 0, 0}, {0, 0, 0}) == doctest::Approx(4.0));
  CHECK(std::abs(wide({0, 0, 0}, {3, 0, 0}) - 4.0 * kMatern52AtOne) <= 1e-12);

  Rng rng = make_rng(1);
  for (int n = 0; n < 100; ++n) {
    const GpPoint a = random_point(rng);
    const GpPoint b = random_point(rng);
    CHECK(k(a, b) == k(b, a));
    CHECK(k(a, b) <= k(a, a));
  }
  CHECK_THROWS(Matern52Kernel{0.0, 1.0, 0.1}.validate());
  CHECK_THROWS(Matern52Kernel{1.0, -1.0, 0.1}.validate());
  CHECK_THROWS(Matern52Kernel{1.0, 1.0, -0.1}.validate());
}

TEST_CASE("gram matrices factor with at most 1e-6 jitter") {
  Rng rng = make_rng(2);
  const Matern52Kernel k{1.0, 1.0, 0.0};
  for (int set = 0; set < 50; ++set) {
    const int n = uniform_int(rng, 2, 40);
    std::vector<GpPoint> xs;
    for (int i = 0; i < n; ++i) xs.push_back(random_point(rng));
    if (set % 5 == 0) xs.push_back(xs.front());  // exact duplicate: singular without jitter
    Eigen::MatrixXd gram(xs.size(), xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < xs.size(); ++j) gram(i, j) = k(xs[i], xs[j]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt;
    const double jitter = factorize_with_jitter(gram, llt);
    CHECK(jitter <= 1e-6);
    CHECK(llt.info() == Eigen::Success);
  }
}

TEST_CASE("one observation posterior by hand") {
  GaussianProcess gp(Matern52Kernel{1.0, 1.0, 0.1});
  const GpPoint x{0.2, 0.3, 0.4};
  const auto empty = gp.predict(x, 0.25);
  CHECK(empty.mean == 0.25);
  CHECK(empty.variance == 1.0);
  gp.add_observation(x, 0.0, 1.0);
  const auto p = gp.predict(x, 0.0);
  CHECK(std::abs(p.mean - 1.0 / 1.1) <= 1e-12);
  CHECK(std::abs(p.variance - (1.0 - 1.0 / 1.1)) <= 1e-12);
}

TEST_CASE("posterior matches the dense-inverse reference") {
  Rng rng = make_rng(3);
  double worst_mean = 0.0;
  double worst_var = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Matern52Kernel k{0.5 + uniform_real(rng), 0.3 + uniform_real(rng),
                           0.01 + 0.2 * uniform_real(rng)};
    GaussianProcess gp(k);
    testing::DenseGp ref{k.amplitude, k.lengthscale, k.noise_variance, {}, {}};
    const int n = uniform_int(rng, 0, 8);
    for (int i = 0; i < n; ++i) {
      const GpPoint x = random_point(rng);
      const double mu0 = uniform_real(rng);
      const double f = uniform_real(rng);
      gp.add_observation(x, mu0, f);
      ref.xs.push_back(x);
      ref.residuals.push_back(static_cast<long double>(f) - mu0);
    }
    for (int q = 0; q < 5; ++q) {
      const GpPoint x = q == 0 && n > 0 ? ref.xs.back() : random_point(rng);
      const double mu0 = uniform_real(rng);
      const auto got = gp.predict(x, mu0);
      const auto [mean, var] = ref.predict(x, mu0);
      worst_mean = std::max(worst_mean, std::abs(got.mean - static_cast<double>(mean)));
      worst_var = std::max(worst_var, std::abs(got.variance - static_cast<double>(var)));
      CHECK(got.variance >= 0.0);
      CHECK(got.variance <= k.amplitude * k.amplitude + 1e-12);
    }
  }
  CHECK(worst_mean <= 1e-10);
  CHECK(worst_var <= 1e-10);
}

TEST_CASE("near-noiseless posterior interpolates") {
  Rng rng = make_rng(4);
  GaussianProcess gp(Matern52Kernel{1.0, 1.0, 1e-8});
  std::vector<std::pair<GpPoint, double>> obs;
  for (int i = 0; i < 6; ++i) {
    const GpPoint x = random_point(rng);
    const double f = uniform_real(rng);
    gp.add_observation(x, 0.3, f);
    obs.emplace_back(x, f);
  }
  for (const auto& [x, f] : obs) CHECK(std::abs(gp.predict(x, 0.3).mean - f) <= 1e-4);
}

TEST_CASE("observations never increase variance") {
  Rng rng = make_rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    GaussianProcess gp(Matern52Kernel{1.0, 1.0, 0.1});
    std::vector<GpPoint> queries;
    for (int q = 0; q < 10; ++q) queries.push_back(random_point(rng));
    std::vector<double> prev(queries.size(), 1.0);
    for (int i = 0; i < 8; ++i) {
      gp.add_observation(random_point(rng), 0.5, uniform_real(rng));
      for (std::size_t q = 0; q < queries.size(); ++q) {
        const double v = gp.predict(queries[q], 0.5).variance;
        CHECK(v <= prev[q] + 1e-12);
        prev[q] = v;
      }
    }
  }
}

TEST_CASE("selection starts at the best prior cell and breaks ties low") {
  const auto levels = distinct_levels();
  const Archive archive = archive_with(levels, {0.2, 0.9, 0.4, 0.9, 0.1});
  ArchivePosterior posterior(archive, Matern52Kernel{});
  const auto sel = select_next(archive, posterior, 0.0);
  const CellId c1 = archive.space().cell_index(behavior_descriptor(levels[1]));
  const CellId c3 = archive.space().cell_index(behavior_descriptor(levels[3]));
  CHECK(sel.cell == std::min(c1, c3));
  CHECK(sel.mean == 0.9);
  CHECK(sel.acquisition == 0.9);
  for (const auto& [cell, elite] : archive.cells()) {
    CHECK(posterior.prior_mean(cell) == elite.performance);
    CHECK(posterior.predict(cell).mean == elite.performance);
  }
  CHECK_THROWS(select_next(Archive("empty"), posterior, 0.03));
}

TEST_CASE("a failed best cell hands over to the runner-up") {
  const auto levels = distinct_levels();
  const std::vector<Level> two = {levels[0], levels[4]};
  const Archive archive = archive_with(two, {0.9, 0.8});
  const CellId a = archive.space().cell_index(behavior_descriptor(two[0]));
  const CellId b = archive.space().cell_index(behavior_descriptor(two[1]));

  ArchivePosterior posterior(archive, Matern52Kernel{});
  CHECK(select_next(archive, posterior, 0.03).cell == a);
  posterior.observe(a, 0.0);

  // Hand-solved 1x1 system: mean(x) = mu0(x) + k(x, a) / 1.1 * (0 - 0.9).
  const auto xa = archive.space().normalized_centroid(a);
  const auto xb = archive.space().normalized_centroid(b);
  const double kab = static_cast<double>(testing::matern52_reference(testing::distance(xa, xb)));
  const double mean_a = 0.9 - 0.9 / 1.1;
  const double mean_b = 0.8 - kab * 0.9 / 1.1;
  CHECK(posterior.predict(a).mean == doctest::Approx(mean_a).epsilon(1e-12));
  CHECK(posterior.predict(b).mean == doctest::Approx(mean_b).epsilon(1e-12));
  REQUIRE(mean_b > mean_a);
  CHECK(select_next(archive, posterior, 0.03).cell == b);
}

TEST_CASE("shifting the prior mean leaves the choice unchanged") {
  Rng rng = make_rng(6);
  const auto levels = distinct_levels();
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> perf;
    for (std::size_t i = 0; i < levels.size(); ++i) perf.push_back(uniform_real(rng));
    const double shift = 2.0 * uniform_real(rng) - 1.0;
    std::vector<double> shifted = perf;
    for (double& p : shifted) p += shift;
    const Archive base = archive_with(levels, perf);
    const Archive moved = archive_with(levels, shifted);
    ArchivePosterior pb(base, Matern52Kernel{});
    ArchivePosterior pm(moved, Matern52Kernel{});
    for (int step = 0; step < 4; ++step) {
      const auto sb = select_next(base, pb, 0.03);
      const auto sm = select_next(moved, pm, 0.03);
      CHECK(sb.cell == sm.cell);
      const double f = uniform_real(rng);
      pb.observe(sb.cell, f);
      pm.observe(sm.cell, f + shift);
    }
  }
}

TEST_CASE("an agent that never wins exhausts the iteration cap") {
  const Archive archive = archive_with(distinct_levels(), {0.9, 0.8, 0.7, 0.6, 0.5});
  AdaptConfig config;
  config.rollouts = 4;
  const auto trace = adapt(archive, DoNothingAgent{}, config, 1);
  CHECK_FALSE(trace.success);
  CHECK(trace.iterations_used() == 20);
  for (const auto& s : trace.steps) CHECK(s.performance == 0.0);
}

TEST_CASE("adaptation stops exactly inside the success window") {
  const Archive archive = archive_with(distinct_levels(), {0.9, 0.8, 0.7, 0.6, 0.5});
  AdaptConfig config;
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto trace = adapt(archive, testing::CoinRouteAgent{0.55}, config, seed);
    REQUIRE_FALSE(trace.steps.empty());
    CHECK(trace.iterations_used() <= config.max_iters);
    for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
      CHECK(trace.steps[i].performance < 0.75);
    }
    const auto& last = trace.steps.back();
    CHECK(trace.success == (last.win_rate >= 0.45 && last.win_rate <= 0.8));
    CHECK(trace.success == (last.performance >= 0.75));
    successes += trace.success;
  }
  CHECK(successes > 20);
  const auto a = adapt(archive, testing::CoinRouteAgent{0.55}, config, 3);
  const auto b = adapt(archive, testing::CoinRouteAgent{0.55}, config, 3);
  CHECK(trace_to_json(a) == trace_to_json(b));
}

TEST_CASE("baseline prior keeps cells and levels and redraws performance") {
  const Archive source = archive_with(distinct_levels(), {0.0, 0.0, 0.0, 0.0, 0.0}, "DoNothing");
  Rng r1 = make_rng(8);
  Rng r2 = make_rng(8);
  const Archive a = baseline_prior(source, r1);
  const Archive b = baseline_prior(source, r2);
  CHECK(a == b);
  CHECK(a.agent_name() == "Baseline (noise)");
  REQUIRE(a.size() == source.size());
  bool changed = false;
  for (const auto& [cell, elite] : source.cells()) {
    const Elite* e = a.find(cell);
    REQUIRE(e != nullptr);
    CHECK(e->level == elite.level);
    CHECK(e->performance >= 0.0);
    CHECK(e->performance <= 1.0);
    changed = changed || e->performance != 0.0;
  }
  CHECK(changed);
}

TEST_CASE("trace serialisation") {
  const Archive archive = archive_with(distinct_levels(), {0.9, 0.8, 0.7, 0.6, 0.5});
  AdaptConfig config;
  config.max_iters = 2;
  config.rollouts = 2;
  const auto trace = adapt(archive, DoNothingAgent{}, config, 4);
  const std::string rows = trace_csv_rows("r", trace);
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 2);
  CHECK(rows.rfind("r,1,", 0) == 0);
  CHECK(rows.find(",0\n") != std::string::npos);
  CHECK(format_cell_id({1, 2, 3}) == "1-2-3");
  CHECK(std::string(kTraceCsvHeader) ==
        "run_id,iteration,cell_id,win_rate,performance,acq_value,success");
  CHECK(trace_to_json(trace).find("\"fastdda.trace/1\"") != std::string::npos);
}

}  // namespace fastdda
