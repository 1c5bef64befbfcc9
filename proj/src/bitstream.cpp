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

#include "scmem/bitstream.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace scmem {

Ratio::Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

__extension__ typedef unsigned __int128 u128;

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  const auto lhs = static_cast<u128>(a.num_) * b.den_;
  const auto rhs = static_cast<u128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::string to_string(const Ratio& r) {
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

Bitstream::Bitstream(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("Bitstream: length must be at least 1");
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; }))
    throw std::invalid_argument("Bitstream: bits must be 0 or 1");
}

Bitstream Bitstream::zeros(std::size_t length) {
  return Bitstream(std::vector<std::uint8_t>(length, 0));
}

Bitstream Bitstream::ones(std::size_t length) {
  return Bitstream(std::vector<std::uint8_t>(length, 1));
}

Bitstream Bitstream::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("Bitstream::parse: expected only '0'/'1', got '" +
                                  std::string(text) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Bitstream(std::move(bits));
}

std::size_t Bitstream::ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string Bitstream::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

}  // namespace scmem
