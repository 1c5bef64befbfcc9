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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scmem {

// Exact non-negative rational, always stored in lowest terms.
class Ratio {
 public:
  Ratio(std::uint64_t num, std::uint64_t den);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

std::string to_string(const Ratio& r);

// A stochastic number: the fraction of 1s is its value. Bits are kept in
// the order they are written, so "01011100" has bit 0 == 0 and bit 1 == 1.
class Bitstream {
 public:
  explicit Bitstream(std::vector<std::uint8_t> bits);

  static Bitstream zeros(std::size_t length);
  static Bitstream ones(std::size_t length);
  static Bitstream parse(std::string_view text);

  std::size_t length() const { return bits_.size(); }
  std::size_t ones() const;
  Ratio value() const { return Ratio(ones(), length()); }

  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  std::string to_string() const;

  friend bool operator==(const Bitstream&, const Bitstream&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace scmem
