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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "scmem/energy.hpp"
#include "scmem/mac_engine.hpp"
#include "scmem/pipelines.hpp"

namespace scmem {

inline constexpr int kConfigSchemaVersion = 1;

// How operations and quantization steps are counted for efficiency and FoM.
struct MetricConventions {
  double ops_per_output = 150;  // 164.8 TOPS/W at 0.91 pJ
  double fom_steps = 16;        // 0.38 fJ/step at 0.91 pJ
};

// Everything a config file can set. Sections mirror the JSON layout:
// pipeline, mac, energy_tables, experiment.
struct SimConfig {
  // pipeline
  unsigned binary_bits = 4;
  std::size_t stream_length = 15;
  unsigned lfsr_width = 4;
  std::vector<unsigned> lfsr_taps;
  SelectKind select = SelectKind::Lfsr;
  bool asc_gating = true;
  double flip_p = 0.0;
  double rate_hz = 10e6;

  MacConfig mac;

  // energy_tables; a proposed table without sa_fire gets asc_convert / m
  EnergyTable conventional_table;
  EnergyTable proposed_table;
  ProfileKind profile = ProfileKind::Calibrated;
  ActivityLog conventional_calibrated;
  ActivityLog proposed_calibrated;
  MetricConventions metrics;

  // experiment
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  InputDistribution distribution = ZeroPeakedGaussian{0.15};
};

SimConfig default_config();

// Strict: unknown keys, wrong types and out-of-range values raise ConfigError.
// Missing keys keep their defaults.
SimConfig parse_config(const nlohmann::json& j);
SimConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const SimConfig& cfg);

PipelineConfig pipeline_config(const SimConfig& cfg, Architecture variant);

}  // namespace scmem
