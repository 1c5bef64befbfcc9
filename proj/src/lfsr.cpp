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

#include "scmem/lfsr.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace scmem {

namespace {

// Maximal-length Fibonacci tap sets, indexed by width.
const std::array<std::vector<unsigned>, 25> kDefaultTaps = {{
    {},
    {},
    {2, 1},
    {3, 2},
    {4, 3},
    {5, 3},
    {6, 5},
    {7, 6},
    {8, 6, 5, 4},
    {9, 5},
    {10, 7},
    {11, 9},
    {12, 6, 4, 1},
    {13, 4, 3, 1},
    {14, 5, 3, 1},
    {15, 14},
    {16, 15, 13, 4},
    {17, 14},
    {18, 11},
    {19, 6, 2, 1},
    {20, 17},
    {21, 19},
    {22, 21},
    {23, 18},
    {24, 23, 22, 17},
}};

}  // namespace

Lfsr::Lfsr(unsigned width, std::vector<unsigned> taps, std::uint32_t seed)
    : width_(width), taps_(std::move(taps)), tap_mask_(0), mask_(0), state_(seed) {
  if (width_ < 2 || width_ > 32)
    throw std::invalid_argument("Lfsr: width must be in [2, 32], got " + std::to_string(width_));
  mask_ = width_ == 32 ? 0xFFFFFFFFu : ((1u << width_) - 1u);
  if (taps_.empty()) throw std::invalid_argument("Lfsr: empty tap set");
  for (unsigned t : taps_) {
    if (t < 1 || t > width_) throw std::invalid_argument("Lfsr: tap outside register");
    tap_mask_ |= 1u << (t - 1);
  }
  if (state_ == 0 || (state_ & ~mask_) != 0)
    throw std::invalid_argument("Lfsr: seed must be a nonzero " + std::to_string(width_) +
                                "-bit value");
}

Lfsr Lfsr::with_default_taps(unsigned width, std::uint32_t seed) {
  const auto taps = default_taps(width);
  return Lfsr(width, std::vector<unsigned>(taps.begin(), taps.end()), seed);
}

std::uint32_t Lfsr::step() {
  const std::uint32_t feedback = static_cast<std::uint32_t>(std::popcount(state_ & tap_mask_) & 1);
  state_ = ((state_ << 1) | feedback) & mask_;
  return state_;
}

std::pair<Lfsr, std::uint32_t> lfsr_next(Lfsr l) {
  const std::uint32_t v = l.step();
  return {std::move(l), v};
}

bool has_default_taps(unsigned width) {
  return width < kDefaultTaps.size() && !kDefaultTaps[width].empty();
}

std::span<const unsigned> default_taps(unsigned width) {
  if (!has_default_taps(width))
    throw std::invalid_argument("no shipped LFSR taps for width " + std::to_string(width));
  return kDefaultTaps[width];
}

std::uint32_t lfsr_seed_from(std::uint64_t value, unsigned width) {
  const std::uint64_t period = (std::uint64_t{1} << width) - 1;
  return static_cast<std::uint32_t>(value % period + 1);
}

}  // namespace scmem
