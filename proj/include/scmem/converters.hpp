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
#include <vector>

#include "scmem/bitstream.hpp"
#include "scmem/lfsr.hpp"

namespace scmem {

// ---- binary <-> stochastic ----------------------------------------------

// Comparator BSC over one full LFSR period: bit t is 1 iff the LFSR output
// at step t is <= value. Produces 2^w - 1 bits with exactly `value` ones.
Bitstream bsc_encode(std::uint32_t value, Lfsr lfsr);

// General BSC for an n-bit value and an arbitrary stream length. Compares
// the LFSR output against value scaled to the LFSR range:
//   bit = state * (2^n - 1) <= value * (2^w - 1)
// so P(1) over a full period is exactly value / (2^n - 1) whenever n
// divides w. Advances `lfsr` by `length` steps.
Bitstream bsc_encode(std::uint32_t value, unsigned value_bits, Lfsr& lfsr, std::size_t length);

// Counter SBC.
std::uint64_t sbc_decode(const Bitstream& b);

// ---- ADC ------------------------------------------------------------------

struct AdcSample {
  std::uint32_t code = 0;
  bool saturated = false;  // input was outside [0, 1] and got clamped
};

// floor(x * 2^n) clamped to [0, 2^n - 1].
AdcSample adc_quantize(double x, unsigned bits);

// ---- thermometer ASC --------------------------------------------------------

class ThermometerCode {
 public:
  // Throws if the bits are not of the form 1...10...0.
  explicit ThermometerCode(std::vector<std::uint8_t> bits);

  std::size_t size() const { return bits_.size(); }
  std::size_t count() const;
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  Bitstream to_bitstream() const { return Bitstream(bits_); }

  friend bool operator==(const ThermometerCode&, const ThermometerCode&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

bool is_thermometer(const Bitstream& b);

// Comparator references from a chain of m + 1 equal capacitors:
// VREF[i] = (i + 1) / (m + 1) * VDD.
class RefLadder {
 public:
  RefLadder(std::vector<double> refs, double vdd);

  std::size_t size() const { return refs_.size(); }
  double vdd() const { return vdd_; }
  double operator[](std::size_t i) const { return refs_[i]; }
  const std::vector<double>& refs() const { return refs_; }

 private:
  std::vector<double> refs_;
  double vdd_;
};

RefLadder ref_ladder(std::size_t m, double vdd);

struct AscActivity {
  std::vector<bool> enabled;  // per sense amplifier
  std::size_t enabled_count() const;
};

struct AscResult {
  ThermometerCode code;
  AscActivity activity;
  bool clamped = false;  // x was outside [0, VDD]
};

// Y[i] = 1 iff x >= VREF[i]. With gating, SA i >= 1 only evaluates when
// Y[i-1] = 1; otherwise Y[i] is forced to 0 and SA i stays disabled.
// Gating never changes the code.
AscResult asc_encode(double x, const RefLadder& ladder, bool gating = true);

// Number of ladder references at or below x: floor(x (m+1) / VDD) in [0, m].
// Computed arithmetically, independent of the comparator bank.
std::size_t thermometer_level(double x, std::size_t m, double vdd);

}  // namespace scmem
