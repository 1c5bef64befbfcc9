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

#include "scmem/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "scmem/converters.hpp"
#include "scmem/errors.hpp"
#include "scmem/lfsr.hpp"
#include "scmem/rng.hpp"
#include "scmem/sc_ops.hpp"

namespace scmem {

namespace {

double standard_normal(std::uint64_t seed, std::uint64_t index) {
  // Box-Muller on two keyed uniforms; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - keyed_uniform(seed, 2 * index);
  const double u2 = keyed_uniform(seed, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<unsigned> taps_for(const PipelineConfig& cfg) {
  if (!cfg.lfsr_taps.empty()) return cfg.lfsr_taps;
  const auto shipped = default_taps(cfg.lfsr_width);
  return {shipped.begin(), shipped.end()};
}

void require_operands(const TrialInputs& in, std::size_t n) {
  if (in.samples.size() != n || in.weights.size() != n)
    throw SizeMismatchError("pipeline: expected " + std::to_string(n) + " samples and weights, got " +
                            std::to_string(in.samples.size()) + " and " +
                            std::to_string(in.weights.size()));
}

bool same_distribution(const InputDistribution& a, const InputDistribution& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ga = std::get_if<ZeroPeakedGaussian>(&a))
    return ga->sigma == std::get<ZeroPeakedGaussian>(b).sigma;
  if (const auto* ea = std::get_if<ExplicitInputs>(&a)) {
    const auto& eb = std::get<ExplicitInputs>(b);
    return ea->samples == eb.samples && ea->weights == eb.weights;
  }
  return true;
}

EnergyReport report_for(const PipelineConfig& cfg, const ActivityLog& simulated) {
  return accumulate(cfg.profile == ProfileKind::Simulated ? simulated : cfg.profile_log,
                    cfg.energy_table);
}

}  // namespace

std::string describe(const InputDistribution& d) {
  if (std::holds_alternative<UniformInputs>(d)) return "uniform";
  if (const auto* g = std::get_if<ZeroPeakedGaussian>(&d)) {
    std::ostringstream os;
    os << "zero_peaked_gaussian(sigma=" << g->sigma << ")";
    return os.str();
  }
  return "explicit";
}

TrialInputs draw_inputs(const InputDistribution& d, std::size_t n, std::uint64_t seed) {
  TrialInputs in;
  if (const auto* e = std::get_if<ExplicitInputs>(&d)) {
    if (e->samples.size() != n || e->weights.size() != n)
      throw SizeMismatchError("explicit inputs: expected " + std::to_string(n) + " operands");
    in.samples = e->samples;
    in.weights = e->weights;
    return in;
  }
  in.samples.resize(n);
  in.weights.resize(n);
  if (std::holds_alternative<UniformInputs>(d)) {
    for (std::size_t i = 0; i < n; ++i) {
      in.samples[i] = keyed_uniform(seed, i);
      in.weights[i] = 2.0 * keyed_uniform(seed, n + i) - 1.0;
    }
    return in;
  }
  const double sigma = std::get<ZeroPeakedGaussian>(d).sigma;
  for (std::size_t i = 0; i < n; ++i) {
    in.samples[i] = std::min(1.0, std::abs(sigma * standard_normal(seed, i)));
    in.weights[i] = std::clamp(sigma * standard_normal(seed, n + i), -1.0, 1.0);
  }
  return in;
}

Ratio sram_size_factor(unsigned n) {
  if (n == 0) throw std::invalid_argument("sram_size_factor: n must be at least 1");
  if (n > 62) throw std::out_of_range("sram_size_factor: n too large");
  return Ratio((std::uint64_t{1} << n) - 1, n);
}

std::size_t SramModel::cells_per_word() const {
  if (word_bits == 0) throw std::invalid_argument("SramModel: word_bits must be positive");
  return stochastic ? (std::size_t{1} << word_bits) - 1 : word_bits;
}

Ratio SramModel::sizing_factor() const {
  return stochastic ? sram_size_factor(word_bits) : Ratio(1, 1);
}

void PipelineConfig::validate() const {
  mac.validate();
  if (binary_bits < 1 || binary_bits > 16)
    throw ConfigError("binary_bits must be in [1, 16]");
  if (stream_length < 1) throw ConfigError("stream_length must be positive");
  if (lfsr_taps.empty() && !has_default_taps(lfsr_width))
    throw ConfigError("no shipped LFSR taps for width " + std::to_string(lfsr_width));
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) throw ConfigError("rate_hz must be positive");
  if (!(flip_p >= 0.0 && flip_p <= 1.0)) throw ConfigError("flip_p must be in [0, 1]");
  if (trials < 1) throw ConfigError("trials must be positive");
  if (const auto* g = std::get_if<ZeroPeakedGaussian>(&distribution); g && !(g->sigma > 0.0))
    throw ConfigError("sigma must be positive");
  if (const auto* e = std::get_if<ExplicitInputs>(&distribution);
      e && (e->samples.size() != mac.n_inputs || e->weights.size() != mac.n_inputs))
    throw SizeMismatchError("explicit inputs must hold exactly N samples and N weights");
}

ErrorStats compute_stats(const std::vector<TrialRecord>& trials) {
  ErrorStats s;
  if (trials.empty()) return s;
  double sum_sq = 0.0;
  double sum = 0.0;
  for (const auto& t : trials) {
    const double e = t.error();
    s.max_abs = std::max(s.max_abs, std::abs(e));
    sum_sq += e * e;
    sum += e;
  }
  const double n = static_cast<double>(trials.size());
  s.rmse = std::sqrt(sum_sq / n);
  s.mean = sum / n;
  return s;
}

TrialRecord run_conventional_trial(const TrialInputs& in, const PipelineConfig& cfg,
                                   std::uint64_t seed, ActivityLog& log) {
  const std::size_t n_inputs = cfg.mac.n_inputs;
  require_operands(in, n_inputs);
  const unsigned n = cfg.binary_bits;
  const std::size_t length = cfg.stream_length;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const auto taps = taps_for(cfg);

  std::vector<Bitstream> positive;
  std::vector<Bitstream> negative;
  positive.reserve(n_inputs);
  negative.reserve(n_inputs);
  std::int64_t oracle_sum = 0;
  for (std::size_t i = 0; i < n_inputs; ++i) {
    const std::uint32_t a = adc_quantize(in.samples[i], n).code;
    const std::uint32_t b = adc_quantize(std::abs(in.weights[i]), n).code;
    const bool is_positive = in.weights[i] >= 0.0;
    oracle_sum += (is_positive ? 1 : -1) * static_cast<std::int64_t>(a) * b;

    Lfsr lfsr_a(cfg.lfsr_width, taps, lfsr_seed_from(derive_seed(seed, 2 * i), cfg.lfsr_width));
    Lfsr lfsr_b(cfg.lfsr_width, taps, lfsr_seed_from(derive_seed(seed, 2 * i + 1), cfg.lfsr_width));
    Bitstream product = sc_mul(bsc_encode(a, n, lfsr_a, length), bsc_encode(b, n, lfsr_b, length));
    if (cfg.flip_p > 0.0)
      product = inject_bitflips(product, cfg.flip_p, derive_seed(seed, 2 * n_inputs + 1 + i));
    positive.push_back(is_positive ? product : Bitstream::zeros(length));
    negative.push_back(is_positive ? Bitstream::zeros(length) : std::move(product));
  }

  SelectSource select = AlternatingSelect{};
  if (cfg.select == SelectKind::Lfsr)
    select = LfsrSelect{cfg.lfsr_width, taps,
                        lfsr_seed_from(derive_seed(seed, 2 * n_inputs), cfg.lfsr_width)};
  const MuxTreeResult pos_tree = mux_tree_accumulate(positive, select);
  const MuxTreeResult neg_tree = mux_tree_accumulate(negative, select);
  const auto pos_count = static_cast<std::int64_t>(sbc_decode(pos_tree.output));
  const auto neg_count = static_cast<std::int64_t>(sbc_decode(neg_tree.output));

  // Sample words hold n bits, weight words n bits plus sign; each is written
  // once and read once, and the result is written back as one n-bit word.
  const std::uint64_t cells = n_inputs * (2 * std::uint64_t{n} + 1);
  log.add(events::kAdcConvert, 2 * n_inputs);
  log.add(events::kSramCellAccess, 2 * cells + n);
  log.add(events::kBscConvert, 2 * n_inputs);
  log.add(events::kScLogicEval, 1);
  log.add(events::kSbcConvert, 2);
  log.add_outputs(1);

  TrialRecord r;
  r.seed = seed;
  r.decoded = static_cast<double>(pos_count - neg_count) * static_cast<double>(pos_tree.scale) /
              static_cast<double>(length);
  r.oracle = static_cast<double>(oracle_sum) / static_cast<double>(full * full);
  return r;
}

TrialRecord run_proposed_trial(const TrialInputs& in, const PipelineConfig& cfg,
                               std::uint64_t seed, ActivityLog& log) {
  const MacConfig& mac = cfg.mac;
  require_operands(in, mac.n_inputs);
  const RefLadder ladder = ref_ladder(mac.m, mac.vdd);

  MacInputs inputs;
  inputs.in.reserve(mac.n_inputs);
  inputs.w.reserve(mac.n_inputs);
  std::uint64_t enabled = 0;
  for (std::size_t i = 0; i < mac.n_inputs; ++i) {
    const AscResult a = asc_encode(in.samples[i] * mac.vdd, ladder, cfg.asc_gating);
    const AscResult b = asc_encode(std::abs(in.weights[i]) * mac.vdd, ladder, cfg.asc_gating);
    enabled += a.activity.enabled_count() + b.activity.enabled_count();
    inputs.in.push_back(a.code.to_bitstream());
    inputs.w.push_back(SignedStochNumber{b.code.to_bitstream(), in.weights[i] >= 0.0});
  }

  MacResult result;
  if (cfg.flip_p > 0.0) {
    std::vector<Bitstream> products = product_streams(inputs);
    std::vector<bool> signs(mac.n_inputs);
    for (std::size_t i = 0; i < mac.n_inputs; ++i) {
      products[i] = inject_bitflips(products[i], cfg.flip_p, derive_seed(seed, 2 * mac.n_inputs + 1 + i));
      signs[i] = inputs.w[i].positive;
    }
    result = mac_evaluate(count_product_streams(products, signs, mac), mac);
  } else {
    result = mac_evaluate(inputs, mac);
  }

  const std::uint64_t conversions = 2 * mac.n_inputs;
  const std::uint64_t cells = mac.n_inputs * (2 * std::uint64_t{mac.m} + 1);
  log.add(events::kSaFire, enabled);
  log.add_sense_amps(enabled, conversions * mac.m - enabled);
  log.add(events::kSramCellAccess, 2 * cells);
  log.add(events::kMixedSignalMacEval, 1);
  log.add_outputs(1);

  TrialRecord r;
  r.seed = seed;
  r.voltage = result.voltage;
  r.decoded = static_cast<double>(decode_voltage(result.voltage, mac));
  r.oracle = static_cast<double>(exact_oracle_thermometer(in.samples, in.weights, mac.m, mac.vdd));
  return r;
}

std::int64_t exact_oracle_thermometer(const std::vector<double>& samples,
                                      const std::vector<double>& weights, std::size_t m,
                                      double vdd) {
  if (samples.size() != weights.size())
    throw SizeMismatchError("exact_oracle_thermometer: operand counts differ");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto a = thermometer_level(samples[i] * vdd, m, vdd);
    const auto b = thermometer_level(std::abs(weights[i]) * vdd, m, vdd);
    sum += (weights[i] >= 0.0 ? 1 : -1) * static_cast<std::int64_t>(std::min(a, b));
  }
  return sum;
}

double exact_oracle_binary(const std::vector<double>& samples, const std::vector<double>& weights,
                           unsigned bits) {
  if (samples.size() != weights.size())
    throw SizeMismatchError("exact_oracle_binary: operand counts differ");
  const double full = static_cast<double>((std::uint64_t{1} << bits) - 1);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::int64_t a = adc_quantize(samples[i], bits).code;
    const std::int64_t b = adc_quantize(std::abs(weights[i]), bits).code;
    sum += (weights[i] >= 0.0 ? 1 : -1) * a * b;
  }
  return static_cast<double>(sum) / (full * full);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) { return derive_seed(seed, trial); }

namespace {

TrialRecord run_trial(const TrialInputs& in, const PipelineConfig& cfg, std::uint64_t seed,
                      ActivityLog& log) {
  return cfg.variant == Architecture::Conventional ? run_conventional_trial(in, cfg, seed, log)
                                                   : run_proposed_trial(in, cfg, seed, log);
}

ExperimentResult single_trial(const std::vector<double>& samples,
                              const std::vector<double>& weights, PipelineConfig cfg,
                              Architecture variant) {
  cfg.variant = variant;
  cfg.trials = 1;
  cfg.validate();
  ExperimentResult r;
  r.trials.push_back(run_trial(TrialInputs{samples, weights}, cfg, cfg.seed, r.activity));
  r.stats = compute_stats(r.trials);
  r.energy = report_for(cfg, r.activity);
  r.config = std::move(cfg);
  return r;
}

}  // namespace

ExperimentResult conventional_pipeline(const std::vector<double>& samples,
                                       const std::vector<double>& weights,
                                       const PipelineConfig& cfg) {
  return single_trial(samples, weights, cfg, Architecture::Conventional);
}

ExperimentResult proposed_pipeline(const std::vector<double>& samples,
                                   const std::vector<double>& weights,
                                   const PipelineConfig& cfg) {
  return single_trial(samples, weights, cfg, Architecture::Proposed);
}

ExperimentResult run_experiment(const PipelineConfig& cfg) {
  cfg.validate();
  ExperimentResult r;
  r.config = cfg;
  r.trials.reserve(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = trial_seed(cfg.seed, t);
    const TrialInputs in = draw_inputs(cfg.distribution, cfg.mac.n_inputs, seed);
    r.trials.push_back(run_trial(in, cfg, seed, r.activity));
  }
  r.stats = compute_stats(r.trials);
  r.energy = report_for(cfg, r.activity);
  return r;
}

Comparison run_comparison(const PipelineConfig& baseline, const PipelineConfig& candidate) {
  if (baseline.mac.n_inputs != candidate.mac.n_inputs)
    throw ConfigError("run_comparison: both sides must use the same N");
  if (baseline.rate_hz != candidate.rate_hz)
    throw ConfigError("run_comparison: both sides must use the same output rate");
  if (!same_distribution(baseline.distribution, candidate.distribution))
    throw ConfigError("run_comparison: both sides must use the same input distribution");
  if (baseline.seed != candidate.seed || baseline.trials != candidate.trials)
    throw ConfigError("run_comparison: both sides must use the same seed and trial count");

  Comparison c;
  c.baseline = run_experiment(baseline);
  c.candidate = run_experiment(candidate);
  c.reduction = reduction_percent(c.baseline.energy, c.candidate.energy);
  return c;
}

}  // namespace scmem
