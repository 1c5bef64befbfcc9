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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scmem/config.hpp"
#include "scmem/pipelines.hpp"

namespace scmem {

inline constexpr int kReportSchemaVersion = 1;

// Power, efficiency and FoM for one per-output energy figure.
struct HeadlineMetrics {
  double energy_pj = 0.0;
  double power_uw = 0.0;
  double efficiency_tops_w = 0.0;
  double fom_fj_per_step = 0.0;
};

HeadlineMetrics headline_metrics(double energy_per_output_joules, double rate_hz, double ops,
                                 double steps);

// Structural counting: a signed N-input MAC is N multiplies plus N - 1 adds,
// and its output n_p - n_n takes 2 m N + 1 distinct levels.
double structural_ops(const MacConfig& mac);
double structural_steps(const MacConfig& mac);

// Everything the `compare` summary prints, as a JSON document. The text
// summary is rendered from this document only, so a saved summary.json
// reproduces the printed numbers.
nlohmann::json comparison_summary(const Comparison& c, const SimConfig& cfg);
std::string format_summary(const nlohmann::json& summary);

// Per-trial rows: trial,seed,decoded,oracle,error,voltage_v
std::string trials_csv(const ExperimentResult& r);

// One row per (architecture, category): architecture,profile,category,count,unit_fj,energy_fj
// Energies and counts are per output.
std::string energy_csv(const Comparison& c);

// Shortest round-trip decimal form.
std::string format_number(double v);

// Writes via a sibling temporary and rename. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// ---- sweeps -------------------------------------------------------------------

struct SweepPoint {
  std::size_t m = 15;
  std::size_t n_inputs = 300;
  std::size_t length = 15;
  double sigma = 0.15;
  double flip_p = 0.0;
};

struct SweepRow {
  SweepPoint point;
  ErrorStats conventional;
  ErrorStats proposed;
  double conventional_pj = 0.0;
  double proposed_pj = 0.0;
  double reduction = 0.0;
};

// Applies the point to `base` (sigma only when the base distribution is
// zero-peaked Gaussian) and runs a comparison.
SweepRow run_sweep_point(const SimConfig& base, const SweepPoint& point);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---- ASC gating --------------------------------------------------------------

struct AscStatsRow {
  std::string distribution;
  std::size_t m = 0;
  double expected_enabled = 0.0;  // analytic, from the distribution's tail
  double sampled_enabled = 0.0;   // mean over inputs pushed through asc_encode
  double saving = 0.0;            // vs. an ungated bank of m SAs
  double energy_fj = 0.0;         // expected_enabled * sa_fire
};

// Uniform and zero-peaked Gaussian(sigma) rows.
std::vector<AscStatsRow> asc_gating_stats(std::size_t m, double sigma, double sa_fire_fj,
                                          std::size_t samples, std::uint64_t seed);
std::string asc_stats_csv(const std::vector<AscStatsRow>& rows);

}  // namespace scmem
