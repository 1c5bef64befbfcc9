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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scmem/config.hpp"
#include "scmem/errors.hpp"
#include "scmem/report.hpp"

using namespace scmem;
using nlohmann::json;

namespace {

SimConfig small_config() {
  SimConfig cfg = default_config();
  cfg.trials = 20;
  return cfg;
}

Comparison compare(const SimConfig& cfg) {
  return run_comparison(pipeline_config(cfg, Architecture::Conventional),
                        pipeline_config(cfg, Architecture::Proposed));
}

}  // namespace

TEST_CASE("shipped default config equals the built-in defaults") {
  const SimConfig shipped = load_config(std::string(SCMEM_SOURCE_DIR) + "/configs/default.json");
  CHECK(to_json(shipped) == to_json(default_config()));
}

TEST_CASE("config round trip") {
  SimConfig cfg = default_config();
  cfg.mac.m = 7;
  cfg.stream_length = 64;
  cfg.lfsr_width = 16;
  cfg.select = SelectKind::Alternating;
  cfg.distribution = ExplicitInputs{std::vector<double>(300, 0.5), std::vector<double>(300, -0.25)};
  cfg.profile = ProfileKind::Naive;
  const json j = to_json(cfg);
  CHECK(to_json(parse_config(j)) == j);
  CHECK(to_json(parse_config(json::parse(j.dump()))) == j);
}

TEST_CASE("config is strict") {
  CHECK_THROWS_AS(parse_config(json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"mac", {{"m", -1}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"mac", {{"m", "x"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"mac", {{"m", 0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"schema_version", 99}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"pipeline", {{"mux_select", "random"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"pipeline", {{"lfsr_width", 40}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"energy_tables", {{"profile", "magic"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"experiment", {{"distribution", {{"kind", "cauchy"}}}}}}),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(json{{"experiment", {{"distribution", {{"kind", "explicit"}, {"samples", {0.1}}, {"weights", {0.1}}}}}}}),
      SizeMismatchError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);

  const auto tmp = std::filesystem::temp_directory_path() / "scmem_bad_config.json";
  std::ofstream(tmp) << "{ not json";
  CHECK_THROWS_AS(load_config(tmp), ConfigError);
  std::filesystem::remove(tmp);
}

TEST_CASE("missing sa_fire is derived from asc_convert / m") {
  SimConfig cfg = default_config();
  CHECK_FALSE(cfg.proposed_table.contains(events::kSaFire));
  const PipelineConfig p = pipeline_config(cfg, Architecture::Proposed);
  CHECK(p.energy_table.unit_aj(events::kSaFire) == 1080);
  cfg.proposed_table.set_fj(events::kSaFire, 2.0);
  CHECK(pipeline_config(cfg, Architecture::Proposed).energy_table.unit_fj(events::kSaFire) == 2.0);
}

TEST_CASE("headline metrics") {
  const HeadlineMetrics h = headline_metrics(0.91e-12, 10e6, 150, 16);
  CHECK(h.power_uw == doctest::Approx(9.1).epsilon(1e-12));
  CHECK(std::abs(h.efficiency_tops_w - 164.8) <= 0.1);
  CHECK(h.fom_fj_per_step == doctest::Approx(0.38).epsilon(0.01));
  MacConfig mac;
  CHECK(structural_ops(mac) == 599);
  CHECK(structural_steps(mac) == 9001);
  CHECK(std::abs(headline_metrics(0.91e-12, 10e6, structural_ops(mac), 16).efficiency_tops_w - 658.2) <= 0.1);
}

TEST_CASE("summary text is rendered from its JSON alone") {
  const SimConfig cfg = small_config();
  const json s = comparison_summary(compare(cfg), cfg);
  const std::string text = format_summary(s);
  CHECK(format_summary(json::parse(s.dump())) == text);
  CHECK(format_summary(json::parse(s.dump(2))) == text);
  CHECK(text.find("reduction: 82.1%") != std::string::npos);
  CHECK(text.find("power 9.10 uW") != std::string::npos);
  CHECK(text.find("164.8 TOPS/W (150 ops)") != std::string::npos);
  CHECK(text.find("658.2 TOPS/W (599 ops)") != std::string::npos);
  CHECK(text.find("FoM 0.38 fJ/step") != std::string::npos);
  CHECK(s.at("reduction_percent").at("naive").get<double>() > 80.0);
  CHECK(s.at("reduction_percent").at("naive").get<double>() < 99.0);
}

TEST_CASE("csv reports") {
  const SimConfig cfg = small_config();
  const Comparison c = compare(cfg);
  const std::string trials = trials_csv(c.candidate);
  CHECK(trials.rfind("trial,seed,decoded,oracle,error,voltage_v\n", 0) == 0);
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 21);

  const std::string energy = energy_csv(c);
  CHECK(energy.rfind("architecture,profile,category,count,unit_fj,energy_fj\n", 0) == 0);
  CHECK(energy.find("proposed,calibrated,sram_cell_access,31,28,868\n") != std::string::npos);
  CHECK(energy.find("conventional,calibrated,adc_convert,2,2150,4300\n") != std::string::npos);
  CHECK(energy.find("proposed,calibrated,total,,,912.26\n") != std::string::npos);
}

TEST_CASE("format_number round trips") {
  for (double v : {0.1, 1.0 / 3.0, 5.0 / 14.0, 1e-17, 123456789.125, -2.5})
    CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(28.0) == "28");
}

TEST_CASE("atomic writes") {
  const auto dir = std::filesystem::temp_directory_path() / "scmem_atomic_test";
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "a.txt", "hello\n");
  std::ifstream f(dir / "a.txt");
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "hello\n");
  CHECK_FALSE(std::filesystem::exists(dir / "a.txt.tmp"));
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(write_file_atomic("/nonexistent/dir/x.txt", "x"), IoError);
}

TEST_CASE("loglog slope") {
  std::vector<double> x{16, 64, 256, 1024}, y;
  for (double v : x) y.push_back(3.0 / std::sqrt(v));
  CHECK(loglog_slope(x, y) == doctest::Approx(-0.5));
  CHECK_THROWS(loglog_slope({1.0}, {1.0}));
  CHECK_THROWS(loglog_slope({1.0, 2.0}, {1.0, 0.0}));
}

TEST_CASE("sweep point") {
  SimConfig cfg = small_config();
  const SweepRow r = run_sweep_point(cfg, SweepPoint{7, 8, 32, 0.2, 0.0});
  CHECK(r.point.m == 7);
  CHECK(r.proposed.max_abs == 0.0);
  CHECK(r.reduction > 0.0);
  const std::string csv = sweep_csv({r});
  CHECK(csv.rfind("m,n_inputs,length,sigma,flip_p,", 0) == 0);
}

TEST_CASE("asc gating stats") {
  const auto rows = asc_gating_stats(15, 0.15, 1.08, 200000, 7);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].expected_enabled == doctest::Approx(15 - 15.0 * 14 / 32));
  for (const auto& r : rows) CHECK(r.sampled_enabled == doctest::Approx(r.expected_enabled).epsilon(0.01));
  CHECK(rows[1].saving > rows[0].saving);
  CHECK(asc_stats_csv(rows).rfind("distribution,m,expected_enabled", 0) == 0);
}
