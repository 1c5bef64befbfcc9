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
#include <span>
#include <utility>
#include <vector>

namespace scmem {

// Fibonacci LFSR. Taps use polynomial notation: {4, 3} is x^4 + x^3 + 1,
// tap t reads state bit t-1. Each step shifts left and feeds the XOR of
// the tapped bits into bit 0.
class Lfsr {
 public:
  Lfsr(unsigned width, std::vector<unsigned> taps, std::uint32_t seed);

  // Uses default_taps(width).
  static Lfsr with_default_taps(unsigned width, std::uint32_t seed);

  // Advances one step and returns the new state.
  std::uint32_t step();

  std::uint32_t state() const { return state_; }
  unsigned width() const { return width_; }
  const std::vector<unsigned>& taps() const { return taps_; }
  std::uint32_t max_state() const { return mask_; }  // 2^w - 1

 private:
  unsigned width_;
  std::vector<unsigned> taps_;
  std::uint32_t tap_mask_;
  std::uint32_t mask_;
  std::uint32_t state_;
};

// Pure form of Lfsr::step().
std::pair<Lfsr, std::uint32_t> lfsr_next(Lfsr l);

// Maximal-length tap sets shipped for widths 2..24.
std::span<const unsigned> default_taps(unsigned width);
bool has_default_taps(unsigned width);

// Maps an arbitrary 64-bit value onto a valid nonzero LFSR state.
std::uint32_t lfsr_seed_from(std::uint64_t value, unsigned width);

}  // namespace scmem
