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
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scmem/bitstream.hpp"
#include "scmem/energy.hpp"
#include "scmem/mac_engine.hpp"

namespace scmem {

// ---- input distributions --------------------------------------------------

// Samples U[0, 1], weights U[-1, 1].
struct UniformInputs {};

// Samples |N(0, sigma)|, weights N(0, sigma), both clamped to full scale.
struct ZeroPeakedGaussian {
  double sigma = 0.15;
};

// The same operands every trial.
struct ExplicitInputs {
  std::vector<double> samples;
  std::vector<double> weights;
};

using InputDistribution = std::variant<UniformInputs, ZeroPeakedGaussian, ExplicitInputs>;

std::string describe(const InputDistribution& d);

struct TrialInputs {
  std::vector<double> samples;  // [0, 1], fraction of full scale
  std::vector<double> weights;  // [-1, 1]
};

TrialInputs draw_inputs(const InputDistribution& d, std::size_t n, std::uint64_t seed);

// ---- SRAM -------------------------------------------------------------------

// Cells used by a stochastic store of n-bit-precision data relative to a
// binary store: (2^n - 1) / n.
Ratio sram_size_factor(unsigned n);

struct SramModel {
  unsigned word_bits = 4;
  std::size_t words = 0;
  bool stochastic = false;

  std::size_t cells_per_word() const;  // n or 2^n - 1
  std::size_t cells() const { return cells_per_word() * words; }
  Ratio sizing_factor() const;
};

// ---- configuration ----------------------------------------------------------

enum class SelectKind { Lfsr, Alternating };

struct PipelineConfig {
  Architecture variant = Architecture::Proposed;
  MacConfig mac;
  unsigned binary_bits = 4;        // ADC / BSC precision n
  std::size_t stream_length = 15;  // conventional SC stream length L
  unsigned lfsr_width = 4;
  std::vector<unsigned> lfsr_taps;  // empty: shipped default for lfsr_width
  SelectKind select = SelectKind::Lfsr;
  bool asc_gating = true;
  double rate_hz = 10e6;
  InputDistribution distribution = ZeroPeakedGaussian{};
  double flip_p = 0.0;
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  EnergyTable energy_table;
  ProfileKind profile = ProfileKind::Simulated;
  ActivityLog profile_log;  // per-output counts for Naive / Calibrated

  void validate() const;
};

// ---- results ----------------------------------------------------------------

struct TrialRecord {
  std::uint64_t seed = 0;
  double decoded = 0.0;
  double oracle = 0.0;
  std::optional<double> voltage;  // proposed only
  double error() const { return decoded - oracle; }
};

struct ErrorStats {
  double max_abs = 0.0;
  double rmse = 0.0;
  double mean = 0.0;  // mean signed error
  friend bool operator==(const ErrorStats&, const ErrorStats&) = default;
};

ErrorStats compute_stats(const std::vector<TrialRecord>& trials);

struct ExperimentResult {
  PipelineConfig config;
  std::vector<TrialRecord> trials;
  ErrorStats stats;
  ActivityLog activity;  // every simulated event, all trials
  EnergyReport energy;   // per the configured profile
};

// ---- single trials -----------------------------------------------------------

// Conventional: ADC -> SRAM -> BSC -> AND -> two MUX trees (positive and
// negative products) -> SBC -> subtract. decoded and oracle are in MAC
// units, i.e. estimates of sum_i s_i a_i b_i / (2^n - 1)^2 where a, b are
// the ADC codes; oracle is that exact expectation.
TrialRecord run_conventional_trial(const TrialInputs& in, const PipelineConfig& cfg,
                                   std::uint64_t trial_seed, ActivityLog& log);

// Proposed: ASC -> SRAM -> mixed-signal MAC. decoded is decode_voltage()
// of the array output, oracle is exact_oracle_thermometer().
TrialRecord run_proposed_trial(const TrialInputs& in, const PipelineConfig& cfg,
                               std::uint64_t trial_seed, ActivityLog& log);

// Single-trial experiments on explicit operands, seeded with cfg.seed.
ExperimentResult conventional_pipeline(const std::vector<double>& samples,
                                       const std::vector<double>& weights,
                                       const PipelineConfig& cfg);
ExperimentResult proposed_pipeline(const std::vector<double>& samples,
                                   const std::vector<double>& weights,
                                   const PipelineConfig& cfg);

// ---- oracles ---------------------------------------------------------------

// Signed dot product under thermometer coding, where the AND of two codes
// has min(count_a, count_b) ones.
std::int64_t exact_oracle_thermometer(const std::vector<double>& samples,
                                      const std::vector<double>& weights, std::size_t m,
                                      double vdd);

// Expected conventional decoded value: sum_i s_i a_i b_i / (2^n - 1)^2.
double exact_oracle_binary(const std::vector<double>& samples, const std::vector<double>& weights,
                           unsigned bits);

// ---- experiments -------------------------------------------------------------

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

ExperimentResult run_experiment(const PipelineConfig& cfg);

struct Comparison {
  ExperimentResult baseline;   // normally the conventional pipeline
  ExperimentResult candidate;  // normally the proposed pipeline
  double reduction = 0.0;      // percent, under each side's configured profile
};

// Runs both configurations on identical inputs. Throws ConfigError unless
// they agree on N, rate, distribution, seed and trial count.
Comparison run_comparison(const PipelineConfig& baseline, const PipelineConfig& candidate);

}  // namespace scmem
