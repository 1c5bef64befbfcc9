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

#include "scmem/converters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scmem {

Bitstream bsc_encode(std::uint32_t value, Lfsr lfsr) {
  if (value > lfsr.max_state())
    throw std::out_of_range("bsc_encode: value " + std::to_string(value) + " exceeds " +
                            std::to_string(lfsr.max_state()));
  std::vector<std::uint8_t> bits(lfsr.max_state());
  for (auto& b : bits) b = static_cast<std::uint8_t>(lfsr.step() <= value);
  return Bitstream(std::move(bits));
}

Bitstream bsc_encode(std::uint32_t value, unsigned value_bits, Lfsr& lfsr, std::size_t length) {
  if (value_bits < 1 || value_bits > 31)
    throw std::invalid_argument("bsc_encode: value width must be in [1, 31]");
  const std::uint64_t full = (std::uint64_t{1} << value_bits) - 1;
  if (value > full)
    throw std::out_of_range("bsc_encode: value " + std::to_string(value) + " exceeds " +
                            std::to_string(full));
  const std::uint64_t threshold = std::uint64_t{value} * lfsr.max_state();
  std::vector<std::uint8_t> bits(length);
  for (auto& b : bits) b = static_cast<std::uint8_t>(std::uint64_t{lfsr.step()} * full <= threshold);
  return Bitstream(std::move(bits));
}

std::uint64_t sbc_decode(const Bitstream& b) { return b.ones(); }

AdcSample adc_quantize(double x, unsigned bits) {
  if (std::isnan(x)) throw std::invalid_argument("adc_quantize: NaN input");
  if (bits < 1 || bits > 31) throw std::invalid_argument("adc_quantize: bits must be in [1, 31]");
  const std::uint32_t top = (1u << bits) - 1;
  AdcSample s;
  s.saturated = x < 0.0 || x > 1.0;
  const double clamped = std::clamp(x, 0.0, 1.0);
  const double scaled = std::floor(clamped * static_cast<double>(1u << bits));
  s.code = static_cast<std::uint32_t>(std::min(scaled, static_cast<double>(top)));
  return s;
}

ThermometerCode::ThermometerCode(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("ThermometerCode: empty code");
  bool seen_zero = false;
  for (std::uint8_t b : bits_) {
    if (b > 1) throw std::invalid_argument("ThermometerCode: bits must be 0 or 1");
    if (b == 0) seen_zero = true;
    else if (seen_zero) throw std::invalid_argument("ThermometerCode: 1 after 0 breaks monotonicity");
  }
}

std::size_t ThermometerCode::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool is_thermometer(const Bitstream& b) {
  bool seen_zero = false;
  for (std::size_t i = 0; i < b.length(); ++i) {
    if (!b[i]) seen_zero = true;
    else if (seen_zero) return false;
  }
  return true;
}

RefLadder::RefLadder(std::vector<double> refs, double vdd) : refs_(std::move(refs)), vdd_(vdd) {
  if (!(vdd_ > 0.0)) throw std::invalid_argument("RefLadder: VDD must be positive");
  if (refs_.empty()) throw std::invalid_argument("RefLadder: need at least one reference");
  double prev = 0.0;
  for (double r : refs_) {
    if (!(r > prev) || !(r < vdd_))
      throw std::invalid_argument("RefLadder: references must increase strictly inside (0, VDD)");
    prev = r;
  }
}

RefLadder ref_ladder(std::size_t m, double vdd) {
  if (m == 0) throw std::invalid_argument("ref_ladder: m must be at least 1");
  std::vector<double> refs(m);
  for (std::size_t i = 0; i < m; ++i)
    refs[i] = static_cast<double>(i + 1) / static_cast<double>(m + 1) * vdd;
  return RefLadder(std::move(refs), vdd);
}

std::size_t AscActivity::enabled_count() const {
  return static_cast<std::size_t>(std::count(enabled.begin(), enabled.end(), true));
}

AscResult asc_encode(double x, const RefLadder& ladder, bool gating) {
  if (std::isnan(x)) throw std::invalid_argument("asc_encode: NaN input");
  const std::size_t m = ladder.size();
  const bool clamped = x < 0.0 || x > ladder.vdd();
  x = std::clamp(x, 0.0, ladder.vdd());

  std::vector<std::uint8_t> y(m, 0);
  AscActivity activity{std::vector<bool>(m, false)};
  for (std::size_t i = 0; i < m; ++i) {
    if (gating && i > 0 && y[i - 1] == 0) continue;
    activity.enabled[i] = true;
    // SA output is low only when the reference is strictly above the input.
    y[i] = static_cast<std::uint8_t>(x >= ladder[i]);
  }
  return AscResult{ThermometerCode(std::move(y)), std::move(activity), clamped};
}

std::size_t thermometer_level(double x, std::size_t m, double vdd) {
  if (std::isnan(x)) throw std::invalid_argument("thermometer_level: NaN input");
  const double level = std::floor(x * static_cast<double>(m + 1) / vdd);
  if (level <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(level), m);
}

}  // namespace scmem
