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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "scmem/bitstream.hpp"

namespace scmem {

// Mixed-signal stochastic MAC: N pairs of m-bit stochastic numbers are
// multiplied bitwise with AND gates and accumulated on two arrays of
// m*N + 1 unit capacitors (positive and negative products), whose shared
// nodes are then charge-shared into a single signed result voltage.

struct MacConfig {
  std::size_t m = 15;          // bits per stochastic number
  std::size_t n_inputs = 300;  // N
  double vdd = 1.0;

  void validate() const;
  std::size_t products() const { return m * n_inputs; }
  std::size_t caps_per_side() const { return m * n_inputs + 1; }
};

// Weight with a separate sign bit. SIGN = 1 (positive == true) routes the
// products to the positive array.
struct SignedStochNumber {
  Bitstream magnitude;
  bool positive = true;
};

struct MacInputs {
  std::vector<Bitstream> in;
  std::vector<SignedStochNumber> w;
};

// Throws SizeMismatchError when counts or stream lengths disagree with cfg.
void validate(const MacInputs& inputs, const MacConfig& cfg);

struct ProductCounts {
  std::uint64_t n_p = 0;
  std::uint64_t n_n = 0;
  std::int64_t signed_sum() const {
    return static_cast<std::int64_t>(n_p) - static_cast<std::int64_t>(n_n);
  }
  friend bool operator==(const ProductCounts&, const ProductCounts&) = default;
};

enum class MacPhase { Idle, Accumulate, Share };

struct SwitchState {
  bool en;
  bool s1;
  bool s2;
};

// EN low while idle; S1 and S2 are never closed together.
SwitchState switches_for(MacPhase phase);

ProductCounts count_products(const MacInputs& inputs, const MacConfig& cfg);

// The AND-gate outputs, one stream per pair.
std::vector<Bitstream> product_streams(const MacInputs& inputs);

// Counts 1s over already-formed product streams, split by sign.
ProductCounts count_product_streams(const std::vector<Bitstream>& products,
                                    const std::vector<bool>& positive, const MacConfig& cfg);

struct PhaseVoltages {
  double vp;
  double vn;
};

// VP = n_p / (mN + 1) * VDD,  VN = (mN - n_n) / (mN + 1) * VDD.
PhaseVoltages phase1_voltages(const ProductCounts& c, const MacConfig& cfg);

// Equal-capacitance charge sharing of the two shared nodes.
double charge_share(double vp, double vn, const MacConfig& cfg);

struct MacResult {
  double voltage = 0.0;
  ProductCounts counts;
  PhaseVoltages phase1{0.0, 0.0};
  std::array<MacPhase, 3> phases{MacPhase::Idle, MacPhase::Accumulate, MacPhase::Share};
};

MacResult mac_evaluate(const MacInputs& inputs, const MacConfig& cfg);
MacResult mac_evaluate(const ProductCounts& counts, const MacConfig& cfg);

// Inverts the charge-share result back to n_p - n_n:
//   round(2 V / VDD * (mN + 1) - mN)
// Throws std::out_of_range for v outside [0, mN / (mN + 1) * VDD].
std::int64_t decode_voltage(double v, const MacConfig& cfg);

// Multiplicative scale per unit capacitor; index i * m + j is the cap driven
// by bit j of pair i, the last entry is the tail cap. Empty means ideal.
struct CapacitorMismatch {
  std::vector<double> positive;
  std::vector<double> negative;
};

struct ChargeOracleResult {
  double vp = 0.0;
  double vn = 0.0;
  double voltage = 0.0;
  double charge_before_share = 0.0;  // C * V units
  double charge_after_share = 0.0;
};

// Independent capacitor-level model. Each cap's bottom plate is driven
// (positive array: VDD where the AND output is 1 for a positive pair, else
// 0; negative array: 0 where the AND output is 1 for a negative pair, else
// VDD; both tail caps at 0), the top plates are joined, and the two joined
// nodes are then connected to each other. Voltages follow from summing
// charge over capacitance at each step.
ChargeOracleResult charge_oracle(const MacInputs& inputs, const MacConfig& cfg,
                                 const std::optional<CapacitorMismatch>& mismatch = std::nullopt);

}  // namespace scmem
