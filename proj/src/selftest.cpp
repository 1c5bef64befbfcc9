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

#include "scmem/selftest.hpp"

#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>

#include <fmt/format.h>

#include "scmem/converters.hpp"
#include "scmem/lfsr.hpp"
#include "scmem/mac_engine.hpp"
#include "scmem/pipelines.hpp"
#include "scmem/rng.hpp"
#include "scmem/sc_ops.hpp"

namespace scmem {

namespace {

std::uint64_t lfsr_period(unsigned width) {
  Lfsr l = Lfsr::with_default_taps(width, 1);
  std::uint64_t n = 0;
  do {
    l.step();
    ++n;
  } while (l.state() != 1 && n <= l.max_state());
  return n;
}

std::string check_lfsr_periods() {
  for (unsigned w = 2; w <= 16; ++w) {
    const std::uint64_t p = lfsr_period(w);
    if (p != (std::uint64_t{1} << w) - 1) return fmt::format("width {} period {}", w, p);
  }
  return {};
}

std::string check_bsc_round_trip() {
  for (unsigned w = 2; w <= 8; ++w) {
    const std::uint32_t top = (1u << w) - 1;
    for (std::uint32_t v = 0; v <= top; ++v) {
      const Bitstream b = bsc_encode(v, Lfsr::with_default_taps(w, 1));
      if (sbc_decode(b) != v) return fmt::format("width {} value {} decoded {}", w, v, sbc_decode(b));
    }
  }
  return {};
}

MacInputs random_inputs(const MacConfig& cfg, std::uint64_t seed) {
  MacInputs in;
  for (std::size_t i = 0; i < cfg.n_inputs; ++i) {
    std::vector<std::uint8_t> a(cfg.m), b(cfg.m);
    for (std::size_t j = 0; j < cfg.m; ++j) {
      a[j] = keyed_uniform(seed, 3 * (i * cfg.m + j)) < 0.5;
      b[j] = keyed_uniform(seed, 3 * (i * cfg.m + j) + 1) < 0.5;
    }
    in.in.emplace_back(std::move(a));
    in.w.push_back({Bitstream(std::move(b)), keyed_uniform(seed, 3 * (i * cfg.m) + 2) < 0.5});
  }
  return in;
}

std::string check_mac_oracle() {
  for (std::uint64_t s = 0; s < 200; ++s) {
    MacConfig cfg;
    cfg.m = 1 + s % 7;
    cfg.n_inputs = 1 + (s / 7) % 9;
    const MacInputs in = random_inputs(cfg, derive_seed(99, s));
    const MacResult r = mac_evaluate(in, cfg);
    const ChargeOracleResult o = charge_oracle(in, cfg);
    if (std::abs(r.voltage - o.voltage) > 1e-12)
      return fmt::format("case {}: engine {} oracle {}", s, r.voltage, o.voltage);
    if (decode_voltage(r.voltage, cfg) != r.counts.signed_sum())
      return fmt::format("case {}: decode mismatch", s);
  }
  return {};
}

std::string check_proposed_exact() {
  PipelineConfig cfg;
  cfg.variant = Architecture::Proposed;
  cfg.mac.m = 7;
  cfg.mac.n_inputs = 16;
  cfg.trials = 200;
  cfg.distribution = UniformInputs{};
  cfg.energy_table.set_fj(std::string(events::kSramCellAccess), 1.0);
  cfg.energy_table.set_fj(std::string(events::kSaFire), 1.0);
  cfg.energy_table.set_fj(std::string(events::kMixedSignalMacEval), 1.0);
  const ExperimentResult r = run_experiment(cfg);
  if (r.stats.max_abs != 0.0) return fmt::format("max |error| {}", r.stats.max_abs);
  return {};
}

std::string check_gating() {
  const RefLadder ladder = ref_ladder(15, 1.0);
  for (int k = 0; k <= 1000; ++k) {
    const double x = k / 1000.0;
    const AscResult g = asc_encode(x, ladder, true);
    const AscResult u = asc_encode(x, ladder, false);
    if (!(g.code == u.code)) return fmt::format("x={} gated code differs", x);
    const std::size_t level = thermometer_level(x, 15, 1.0);
    if (g.code.count() != level) return fmt::format("x={} level {} vs {}", x, g.code.count(), level);
    if (g.activity.enabled_count() != std::min<std::size_t>(level + 1, 15))
      return fmt::format("x={} enabled {}", x, g.activity.enabled_count());
  }
  return {};
}

}  // namespace

std::vector<SelfCheck> run_selftests() {
  const std::pair<const char*, std::function<std::string()>> checks[] = {
      {"lfsr maximal period (w = 2..16)", check_lfsr_periods},
      {"bsc -> sbc round trip (w = 2..8)", check_bsc_round_trip},
      {"mac engine vs charge oracle", check_mac_oracle},
      {"proposed pipeline exact vs thermometer oracle", check_proposed_exact},
      {"asc gating preserves codes", check_gating},
  };
  std::vector<SelfCheck> out;
  for (const auto& [name, fn] : checks) {
    SelfCheck c{name, false, {}};
    try {
      c.detail = fn();
      c.passed = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace scmem
