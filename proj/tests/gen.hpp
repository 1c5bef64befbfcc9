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

// Small deterministic generators for property tests.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scmem/bitstream.hpp"
#include "scmem/rng.hpp"

namespace scmem::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() { return splitmix64(seed_ + 0x9E3779B97F4A7C15ULL * ++n_); }
  double uniform() { return unit_interval(next()); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (next() & 1) != 0; }

  Bitstream stream(std::size_t length) {
    std::vector<std::uint8_t> bits(length);
    for (auto& b : bits) b = coin() ? 1 : 0;
    return Bitstream(std::move(bits));
  }

  Bitstream stream_with_p(std::size_t length, double p) {
    std::vector<std::uint8_t> bits(length);
    for (auto& b : bits) b = uniform() < p ? 1 : 0;
    return Bitstream(std::move(bits));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t n_ = 0;
};

// Bitstream whose bits are the binary digits of `code` (MSB first).
inline Bitstream stream_from_code(std::uint64_t code, std::size_t length) {
  std::vector<std::uint8_t> bits(length);
  for (std::size_t i = 0; i < length; ++i) bits[i] = (code >> (length - 1 - i)) & 1;
  return Bitstream(std::move(bits));
}

}  // namespace scmem::testing
