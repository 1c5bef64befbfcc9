/*
 * Copyright 2026 The scmem Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gen.hpp"
#include "scmem/errors.hpp"
#include "scmem/pipelines.hpp"

using namespace scmem;
using scmem::testing::Gen;

namespace {

PipelineConfig base(Architecture a, std::size_t m, std::size_t n) {
  PipelineConfig c;
  c.variant = a;
  c.mac.m = m;
  c.mac.n_inputs = n;
  c.trials = 1;
  const DefaultTables t = default_tables(static_cast<unsigned>(m));
  c.energy_table = a == Architecture::Conventional ? t.conventional : t.proposed;
  return c;
}

double level_input(std::size_t k, std::size_t m) { return (k + 0.5) / double(m + 1); }

// Independent reference for the thermometer dot product: count leading ones
// of each code by comparing against the ladder directly, then take min.
std::int64_t thermometer_dot(const std::vector<double>& s, const std::vector<double>& w,
                             std::size_t m) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::int64_t a = 0, b = 0;
    for (std::size_t k = 1; k <= m; ++k) {
      a += s[i] >= double(k) / double(m + 1);
      b += std::abs(w[i]) >= double(k) / double(m + 1);
    }
    sum += (w[i] >= 0 ? 1 : -1) * std::min(a, b);
  }
  return sum;
}

}  // namespace

TEST_CASE("sram sizing factor") {
  CHECK(sram_size_factor(1) == Ratio(1, 1));
  CHECK(sram_size_factor(4) == Ratio(15, 4));
  CHECK(sram_size_factor(2) == Ratio(3, 2));
  SramModel s{4, 10, true};
  CHECK(s.cells() == 150);
  CHECK(SramModel{4, 10, false}.cells() == 40);
  CHECK(s.sizing_factor() == Ratio(15, 4));
}

TEST_CASE("conventional: singleton full scale is exact") {
  const PipelineConfig cfg = base(Architecture::Conventional, 15, 1);
  const auto r = conventional_pipeline({1.0}, {1.0}, cfg);
  CHECK(r.trials[0].decoded == doctest::Approx(1.0));
  CHECK(r.trials[0].oracle == doctest::Approx(1.0));
  const auto neg = conventional_pipeline({1.0}, {-1.0}, cfg);
  CHECK(neg.trials[0].decoded == doctest::Approx(-1.0));
}

TEST_CASE("conventional: identical products pass through the MUX exactly") {
  for (auto kind : {SelectKind::Lfsr, SelectKind::Alternating}) {
    PipelineConfig cfg = base(Architecture::Conventional, 15, 2);
    cfg.select = kind;
    const auto r = conventional_pipeline({1.0, 1.0}, {1.0, 1.0}, cfg);
    CHECK(r.trials[0].decoded == doctest::Approx(2.0));
    CHECK(r.trials[0].oracle == doctest::Approx(2.0));
  }
}

TEST_CASE("conventional: mean over seeds is unbiased with a wide LFSR") {
  PipelineConfig cfg = base(Architecture::Conventional, 15, 4);
  cfg.lfsr_width = 20;
  cfg.stream_length = 64;
  cfg.distribution = ExplicitInputs{{0.3, 0.8, 0.55, 1.0}, {0.6, -0.9, 0.25, -0.4}};
  cfg.trials = 10000;
  const auto r = run_experiment(cfg);
  double sd = 0;
  for (const auto& t : r.trials) sd += (t.error() - r.stats.mean) * (t.error() - r.stats.mean);
  sd = std::sqrt(sd / double(r.trials.size() - 1));
  CHECK(std::abs(r.stats.mean) <= 3 * sd / std::sqrt(double(r.trials.size())));
  const double oracle = exact_oracle_binary({0.3, 0.8, 0.55, 1.0}, {0.6, -0.9, 0.25, -0.4}, 4);
  for (const auto& t : r.trials) CHECK(t.oracle == oracle);
}

TEST_CASE("conventional: a 4-bit select LFSR is off balance by 8/15") {
  // Over one period the select LSB is 1 in 8 of 15 states, so a two-input
  // tree weights its right input 8/15 instead of 1/2.
  PipelineConfig cfg = base(Architecture::Conventional, 15, 2);
  cfg.distribution = ExplicitInputs{{0.0, 1.0}, {1.0, 1.0}};
  cfg.trials = 2000;
  const auto r = run_experiment(cfg);
  CHECK(r.stats.mean == doctest::Approx(2.0 * 8.0 / 15.0 - 1.0).epsilon(1e-9));
}

TEST_CASE("conventional: activity per output") {
  PipelineConfig cfg = base(Architecture::Conventional, 15, 5);
  cfg.distribution = UniformInputs{};
  cfg.trials = 3;
  const auto r = run_experiment(cfg);
  CHECK(r.activity.outputs() == 3);
  CHECK(r.activity.count(events::kAdcConvert) == 3 * 10);
  CHECK(r.activity.count(events::kBscConvert) == 3 * 10);
  CHECK(r.activity.count(events::kSbcConvert) == 3 * 2);
  CHECK(r.activity.count(events::kSramCellAccess) == 3 * (2 * 5 * 9 + 4));
  std::set<std::string> logged, priced;
  for (const auto& [k, _] : r.activity.counts()) logged.insert(k);
  for (const auto& [k, _] : cfg.energy_table.entries()) priced.insert(k);
  CHECK(logged == priced);
}

TEST_CASE("proposed: all-zero samples") {
  const PipelineConfig cfg = base(Architecture::Proposed, 7, 4);
  const auto r = proposed_pipeline({0, 0, 0, 0}, {0.5, -0.9, 1.0, 0.1}, cfg);
  CHECK(r.trials[0].decoded == 0.0);
  CHECK(*r.trials[0].voltage == doctest::Approx(0.5 * 28.0 / 29.0));
}

TEST_CASE("proposed: worked example") {
  const PipelineConfig cfg = base(Architecture::Proposed, 3, 2);
  // Levels 2, 3 for samples; 1 (+), 2 (-) for weights: codes 110/111, 100/110.
  const auto r = proposed_pipeline({level_input(2, 3), level_input(3, 3)},
                                   {level_input(1, 3), -level_input(2, 3)}, cfg);
  CHECK(r.trials[0].decoded == -1.0);
  CHECK(*r.trials[0].voltage == doctest::Approx(5.0 / 14.0));
}

TEST_CASE("proposed: exhaustive quantized grid is exact") {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 2; ++n) {
      const PipelineConfig cfg = base(Architecture::Proposed, m, n);
      const std::size_t levels = m + 1;
      std::size_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= levels * (2 * levels);
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<double> s(n), w(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
          s[i] = level_input(c % levels, m);
          c /= levels;
          const std::size_t wl = c % (2 * levels);
          c /= 2 * levels;
          w[i] = wl < levels ? level_input(wl, m) : -level_input(wl - levels, m);
        }
        const auto r = proposed_pipeline(s, w, cfg);
        CHECK(r.trials[0].decoded == double(thermometer_dot(s, w, m)));
        CHECK(r.trials[0].error() == 0.0);
      }
    }
}

TEST_CASE("thermometer oracle") {
  CHECK(exact_oracle_thermometer({level_input(2, 7)}, {level_input(1, 7)}, 7, 1.0) == 1);
  CHECK(exact_oracle_thermometer({0.0}, {1.0}, 7, 1.0) == 0);
  CHECK(exact_oracle_thermometer({1.0, 1.0}, {1.0, 1.0}, 7, 1.0) == 14);
  CHECK(exact_oracle_thermometer({1.0, 1.0}, {1.0, -1.0}, 7, 1.0) == 0);
  CHECK_THROWS_AS(exact_oracle_thermometer({1.0}, {}, 7, 1.0), SizeMismatchError);
}

TEST_CASE("proposed: random inputs are exact and priced") {
  PipelineConfig cfg = base(Architecture::Proposed, 15, 32);
  cfg.trials = 300;
  cfg.distribution = UniformInputs{};
  const auto r = run_experiment(cfg);
  CHECK(r.stats.max_abs == 0.0);
  for (const auto& [k, _] : r.activity.counts()) CHECK(cfg.energy_table.contains(k));
  CHECK(r.activity.sa_enabled() + r.activity.sa_disabled() == 300u * 64u * 15u);
}

TEST_CASE("flip noise grows with probability") {
  for (auto arch : {Architecture::Proposed, Architecture::Conventional}) {
    double prev = -1.0;
    for (double p : {0.0, 0.01, 0.05, 0.2}) {
      PipelineConfig cfg = base(arch, 15, 16);
      cfg.flip_p = p;
      cfg.trials = 400;
      cfg.distribution = UniformInputs{};
      const double rmse = run_experiment(cfg).stats.rmse;
      CHECK(rmse > prev);
      prev = rmse;
    }
  }
}

TEST_CASE("experiments are deterministic") {
  for (auto arch : {Architecture::Proposed, Architecture::Conventional}) {
    PipelineConfig cfg = base(arch, 15, 20);
    cfg.trials = 50;
    cfg.flip_p = 0.01;
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
      CHECK(a.trials[i].decoded == b.trials[i].decoded);
      CHECK(a.trials[i].oracle == b.trials[i].oracle);
    }
    CHECK(a.activity == b.activity);
    CHECK(a.energy.total_aj == b.energy.total_aj);
    cfg.seed = 2;
    const auto c = run_experiment(cfg);
    CHECK_FALSE(c.trials[0].seed == a.trials[0].seed);
  }
}

TEST_CASE("comparison") {
  PipelineConfig conv = base(Architecture::Conventional, 15, 8);
  PipelineConfig prop = base(Architecture::Proposed, 15, 8);
  conv.trials = prop.trials = 20;
  CHECK(run_comparison(prop, prop).reduction == doctest::Approx(0.0));
  CHECK(run_comparison(conv, prop).reduction > 0.0);
  PipelineConfig other = prop;
  other.mac.n_inputs = 9;
  CHECK_THROWS_AS(run_comparison(conv, other), ConfigError);
  other = prop;
  other.seed = 5;
  CHECK_THROWS_AS(run_comparison(conv, other), ConfigError);
}

TEST_CASE("config validation") {
  PipelineConfig cfg = base(Architecture::Conventional, 15, 4);
  cfg.binary_bits = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = base(Architecture::Conventional, 15, 4);
  cfg.flip_p = 2.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = base(Architecture::Conventional, 15, 4);
  cfg.distribution = ExplicitInputs{{0.1}, {0.1}};
  CHECK_THROWS_AS(cfg.validate(), SizeMismatchError);
  CHECK_THROWS_AS(conventional_pipeline({0.1, 0.2}, {0.1}, base(Architecture::Conventional, 15, 2)),
                  SizeMismatchError);
}

TEST_CASE("input draws stay in range") {
  for (const InputDistribution& d : {InputDistribution{UniformInputs{}}, InputDistribution{ZeroPeakedGaussian{0.15}}}) {
    const TrialInputs in = draw_inputs(d, 5000, 3);
    for (double s : in.samples) CHECK((s >= 0.0 && s <= 1.0));
    for (double w : in.weights) CHECK((w >= -1.0 && w <= 1.0));
  }
  const TrialInputs g = draw_inputs(ZeroPeakedGaussian{0.15}, 20000, 4);
  double sq = 0;
  for (double w : g.weights) sq += w * w;
  CHECK(std::sqrt(sq / 20000) == doctest::Approx(0.15).epsilon(0.03));
}
