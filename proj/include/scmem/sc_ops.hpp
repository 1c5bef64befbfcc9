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
#include <variant>
#include <vector>

#include "scmem/bitstream.hpp"

namespace scmem {

// Select sources for MUX addition. A MUX tree consumes one select stream
// per level; see select_stream() for how each kind provides them.

// Level 0 runs an LFSR from `seed`; deeper levels run the same polynomial
// from seeds derived from (seed, level). The select bit is the LSB of the
// state after each step. Empty taps means the shipped default for `width`.
struct LfsrSelect {
  unsigned width = 16;
  std::vector<unsigned> taps;
  std::uint32_t seed = 0xACE1;
};

// One caller-supplied stream per tree level.
struct ExplicitSelect {
  explicit ExplicitSelect(Bitstream level0) : levels{std::move(level0)} {}
  explicit ExplicitSelect(std::vector<Bitstream> per_level) : levels(std::move(per_level)) {}
  std::vector<Bitstream> levels;
};

// Level l selects with bit l of the clock count: 0101..., 0011..., ...
struct AlternatingSelect {};

using SelectSource = std::variant<LfsrSelect, ExplicitSelect, AlternatingSelect>;

Bitstream select_stream(const SelectSource& sel, std::size_t level, std::size_t length);

// AND-gate multiplication.
Bitstream sc_mul(const Bitstream& a, const Bitstream& b);

// out[i] = sel[i] ? b[i] : a[i]
Bitstream mux_add(const Bitstream& a, const Bitstream& b, const SelectSource& sel);

struct MuxTreeResult {
  Bitstream output;
  std::size_t padding = 0;  // all-zero streams appended to reach a power of two
  std::size_t scale = 1;    // 2^depth; expected output = sum of inputs / scale
};

MuxTreeResult mux_tree_accumulate(const std::vector<Bitstream>& streams, const SelectSource& sel);

// Flips each bit independently with probability p. The decision for bit i
// depends only on (seed, i).
Bitstream inject_bitflips(const Bitstream& b, double p, std::uint64_t seed);

Bitstream flip_bit(const Bitstream& b, std::size_t index);

// Flip one bit of an unsigned binary word of `width` bits.
std::uint64_t flip_word_bit(std::uint64_t word, unsigned width, unsigned bit);

// Independent Bernoulli(p) bits, keyed like inject_bitflips.
Bitstream bernoulli_stream(std::size_t length, double p, std::uint64_t seed);

}  // namespace scmem
