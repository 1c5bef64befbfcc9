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

#include "scmem/sc_ops.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "scmem/errors.hpp"
#include "scmem/lfsr.hpp"
#include "scmem/rng.hpp"

namespace scmem {

namespace {

void require_same_length(const Bitstream& a, const Bitstream& b, const char* op) {
  if (a.length() != b.length())
    throw SizeMismatchError(std::string(op) + ": length mismatch (" +
                            std::to_string(a.length()) + " vs " + std::to_string(b.length()) +
                            ")");
}

void require_probability(double p, const char* op) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(op) + ": probability must be in [0, 1]");
}

Bitstream mux(const Bitstream& a, const Bitstream& b, const Bitstream& sel) {
  std::vector<std::uint8_t> out(a.length());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sel[i] ? b[i] : a[i];
  return Bitstream(std::move(out));
}

struct SelectVisitor {
  std::size_t level;
  std::size_t length;

  Bitstream operator()(const LfsrSelect& s) const {
    std::vector<unsigned> taps = s.taps;
    if (taps.empty()) {
      const auto shipped = default_taps(s.width);
      taps.assign(shipped.begin(), shipped.end());
    }
    const std::uint32_t seed =
        level == 0 ? s.seed : lfsr_seed_from(derive_seed(s.seed, level), s.width);
    Lfsr lfsr(s.width, taps, seed);
    std::vector<std::uint8_t> bits(length);
    for (auto& b : bits) b = static_cast<std::uint8_t>(lfsr.step() & 1u);
    return Bitstream(std::move(bits));
  }

  Bitstream operator()(const ExplicitSelect& s) const {
    if (level >= s.levels.size())
      throw std::invalid_argument("ExplicitSelect: no select stream for tree level " +
                                  std::to_string(level));
    const Bitstream& sel = s.levels[level];
    if (sel.length() != length)
      throw SizeMismatchError("ExplicitSelect: select length " + std::to_string(sel.length()) +
                              " does not match operand length " + std::to_string(length));
    return sel;
  }

  Bitstream operator()(const AlternatingSelect&) const {
    std::vector<std::uint8_t> bits(length);
    for (std::size_t t = 0; t < length; ++t) bits[t] = static_cast<std::uint8_t>((t >> level) & 1u);
    return Bitstream(std::move(bits));
  }
};

}  // namespace

Bitstream select_stream(const SelectSource& sel, std::size_t level, std::size_t length) {
  return std::visit(SelectVisitor{level, length}, sel);
}

Bitstream sc_mul(const Bitstream& a, const Bitstream& b) {
  require_same_length(a, b, "sc_mul");
  std::vector<std::uint8_t> out(a.length());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(a[i] && b[i]);
  return Bitstream(std::move(out));
}

Bitstream mux_add(const Bitstream& a, const Bitstream& b, const SelectSource& sel) {
  require_same_length(a, b, "mux_add");
  return mux(a, b, select_stream(sel, 0, a.length()));
}

MuxTreeResult mux_tree_accumulate(const std::vector<Bitstream>& streams,
                                  const SelectSource& sel) {
  if (streams.empty()) throw std::invalid_argument("mux_tree_accumulate: no input streams");
  const std::size_t length = streams.front().length();
  for (const auto& s : streams) require_same_length(streams.front(), s, "mux_tree_accumulate");

  const std::size_t width = std::bit_ceil(streams.size());
  std::vector<Bitstream> level_streams = streams;
  level_streams.resize(width, Bitstream::zeros(length));

  std::size_t level = 0;
  while (level_streams.size() > 1) {
    const Bitstream s = select_stream(sel, level, length);
    std::vector<Bitstream> next;
    next.reserve(level_streams.size() / 2);
    for (std::size_t i = 0; i < level_streams.size(); i += 2)
      next.push_back(mux(level_streams[i], level_streams[i + 1], s));
    level_streams = std::move(next);
    ++level;
  }
  return MuxTreeResult{std::move(level_streams.front()), width - streams.size(), width};
}

Bitstream inject_bitflips(const Bitstream& b, double p, std::uint64_t seed) {
  require_probability(p, "inject_bitflips");
  std::vector<std::uint8_t> out(b.bits().begin(), b.bits().end());
  if (p == 0.0) return Bitstream(std::move(out));
  for (std::size_t i = 0; i < out.size(); ++i)
    if (keyed_uniform(seed, i) < p) out[i] ^= 1u;
  return Bitstream(std::move(out));
}

Bitstream flip_bit(const Bitstream& b, std::size_t index) {
  if (index >= b.length()) throw std::out_of_range("flip_bit: index past end of stream");
  std::vector<std::uint8_t> out(b.bits().begin(), b.bits().end());
  out[index] ^= 1u;
  return Bitstream(std::move(out));
}

std::uint64_t flip_word_bit(std::uint64_t word, unsigned width, unsigned bit) {
  if (width == 0 || width > 64 || bit >= width)
    throw std::out_of_range("flip_word_bit: bit outside word");
  return word ^ (std::uint64_t{1} << bit);
}

Bitstream bernoulli_stream(std::size_t length, double p, std::uint64_t seed) {
  require_probability(p, "bernoulli_stream");
  std::vector<std::uint8_t> bits(length);
  for (std::size_t i = 0; i < length; ++i)
    bits[i] = static_cast<std::uint8_t>(keyed_uniform(seed, i) < p);
  return Bitstream(std::move(bits));
}

}  // namespace scmem
