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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gen.hpp"
#include "scmem/errors.hpp"
#include "scmem/lfsr.hpp"
#include "scmem/sc_ops.hpp"

using namespace scmem;
using scmem::testing::Gen;

TEST_CASE("ratio normalises and orders") {
  CHECK(Ratio(4, 8) == Ratio(1, 2));
  CHECK(Ratio(0, 5) == Ratio(0, 1));
  CHECK(to_string(Ratio(6, 9)) == "2/3");
  CHECK(Ratio(1, 3) < Ratio(1, 2));
  CHECK(Ratio(3, 4) > Ratio(2, 3));
  CHECK_THROWS_AS(Ratio(1, 0), std::invalid_argument);
}

TEST_CASE("bitstream value") {
  CHECK(Bitstream::parse("01011100").value() == Ratio(4, 8));
  CHECK(Bitstream::parse("00000000").value() == Ratio(0, 1));
  CHECK(Bitstream::parse("11111111").value() == Ratio(1, 1));
  CHECK(Bitstream::parse("01011100").to_string() == "01011100");
  CHECK(Bitstream::parse("0110")[1]);
  CHECK_FALSE(Bitstream::parse("0110")[0]);
  CHECK_THROWS(Bitstream::parse(""));
  CHECK_THROWS(Bitstream::parse("0120"));
  CHECK_THROWS(Bitstream(std::vector<std::uint8_t>{0, 2}));
}

TEST_CASE("sc_mul") {
  const auto a = Bitstream::parse("01011100");
  const auto b = Bitstream::parse("11101000");
  CHECK(sc_mul(a, b) == Bitstream::parse("01001000"));
  CHECK(sc_mul(a, b).value() == Ratio(2, 8));
  CHECK(sc_mul(a, Bitstream::ones(8)) == a);
  CHECK(sc_mul(a, Bitstream::zeros(8)) == Bitstream::zeros(8));
  CHECK_THROWS_AS(sc_mul(a, Bitstream::ones(7)), SizeMismatchError);
}

TEST_CASE("sc_mul never exceeds either operand") {
  Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t len = g.between(1, 64);
    const Bitstream a = g.stream(len);
    const Bitstream b = g.stream(len);
    const Ratio v = sc_mul(a, b).value();
    CHECK(v <= a.value());
    CHECK(v <= b.value());
  }
}

TEST_CASE("sc_mul of independent streams averages to the product") {
  for (auto [p, q] : {std::pair{0.5, 0.5}, std::pair{0.25, 0.75}, std::pair{0.9, 0.1}}) {
    const std::size_t len = 64;
    const int trials = 10000;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Bitstream a = bernoulli_stream(len, p, derive_seed(1, 2 * t));
      const Bitstream b = bernoulli_stream(len, q, derive_seed(1, 2 * t + 1));
      sum += sc_mul(a, b).value().to_double();
    }
    const double mean = sum / trials;
    const double sigma = std::sqrt(p * q * (1 - p * q) / len);
    CHECK(std::abs(mean - p * q) <= 3 * sigma);
    // The same bound on the mean's own spread.
    CHECK(std::abs(mean - p * q) <= 4 * sigma / std::sqrt(double(trials)));
  }
}

TEST_CASE("mux_add") {
  const auto alt = Bitstream::parse("10101010");
  for (const SelectSource& s :
       {SelectSource{AlternatingSelect{}}, SelectSource{LfsrSelect{}},
        SelectSource{ExplicitSelect(Bitstream::parse("00110101"))}})
    CHECK(mux_add(alt, alt, s) == alt);

  const auto out = mux_add(Bitstream::ones(8), Bitstream::zeros(8),
                           ExplicitSelect(Bitstream::parse("01010101")));
  CHECK(out.value() == Ratio(4, 8));

  const auto out2 = mux_add(Bitstream::parse("11110000"), Bitstream::parse("00001111"),
                            AlternatingSelect{});
  CHECK(out2 == Bitstream::parse("10100101"));
  CHECK(out2.value() == Ratio(4, 8));

  CHECK_THROWS_AS(mux_add(alt, Bitstream::ones(7), AlternatingSelect{}), SizeMismatchError);
  CHECK_THROWS_AS(mux_add(alt, alt, ExplicitSelect(Bitstream::ones(7))), SizeMismatchError);
}

TEST_CASE("mux_add counts ones at the selected positions") {
  Gen g(23);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t len = g.between(1, 48);
    const Bitstream a = g.stream(len), b = g.stream(len), sel = g.stream(len);
    std::size_t expect = 0;
    for (std::size_t t = 0; t < len; ++t) expect += sel[t] ? b[t] : a[t];
    CHECK(mux_add(a, b, ExplicitSelect(sel)).value() == Ratio(expect, len));
  }
}

TEST_CASE("mux tree") {
  const auto a = Bitstream::parse("0110");
  const auto single = mux_tree_accumulate({a}, AlternatingSelect{});
  CHECK(single.output == a);
  CHECK(single.scale == 1);
  CHECK(single.padding == 0);

  const auto ones = Bitstream::ones(4);
  CHECK(mux_tree_accumulate({ones, ones, ones, ones}, AlternatingSelect{}).output.value() ==
        Ratio(1, 1));
  CHECK(mux_tree_accumulate({ones, ones, ones, ones}, LfsrSelect{}).output.value() == Ratio(1, 1));

  const auto two = mux_tree_accumulate({Bitstream::parse("1111"), Bitstream::parse("0000")},
                                       ExplicitSelect(Bitstream::parse("0101")));
  CHECK(two.output.value() == Ratio(2, 4));
  CHECK(two.scale == 2);

  const auto three = mux_tree_accumulate({ones, ones, ones}, AlternatingSelect{});
  CHECK(three.padding == 1);
  CHECK(three.scale == 4);

  CHECK_THROWS_AS(mux_tree_accumulate({}, AlternatingSelect{}), std::invalid_argument);
  // A missing select level is an error, not a silent default.
  CHECK_THROWS(mux_tree_accumulate({ones, ones, ones}, ExplicitSelect(Bitstream::parse("0101"))));
}

TEST_CASE("mux tree picks the stream indexed by the per-level select bits") {
  Gen g(5);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = g.between(1, 9);
    const std::size_t len = g.between(1, 32);
    std::vector<Bitstream> streams;
    for (std::size_t k = 0; k < n; ++k) streams.push_back(g.stream(len));
    std::size_t depth = 0;
    while ((std::size_t{1} << depth) < n) ++depth;
    std::vector<Bitstream> levels;
    for (std::size_t l = 0; l < depth; ++l) levels.push_back(g.stream(len));

    const auto r = mux_tree_accumulate(streams, ExplicitSelect(levels));
    CHECK(r.scale == (std::size_t{1} << depth));
    CHECK(r.padding == r.scale - n);
    for (std::size_t t = 0; t < len; ++t) {
      std::size_t idx = 0;
      for (std::size_t l = 0; l < depth; ++l) idx |= std::size_t{levels[l][t]} << l;
      const bool expect = idx < n ? streams[idx][t] : false;
      CHECK(r.output[t] == expect);
    }
  }
}

TEST_CASE("bit flips") {
  const auto a = Bitstream::parse("01101010");
  CHECK(inject_bitflips(a, 0.0, 42) == a);
  CHECK(inject_bitflips(a, 1.0, 42) == Bitstream::parse("10010101"));
  CHECK(inject_bitflips(a, 0.3, 7) == inject_bitflips(a, 0.3, 7));
  CHECK_THROWS(inject_bitflips(a, -0.1, 1));
  CHECK_THROWS(inject_bitflips(a, 1.5, 1));

  for (std::size_t i = 0; i < a.length(); ++i) {
    const Ratio v = flip_bit(a, i).value();
    CHECK((v == Ratio(3, 8) || v == Ratio(5, 8)));
  }
}

TEST_CASE("a single flip moves the value by exactly 1/L") {
  Gen g(3);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t len = g.between(1, 64);
    const Bitstream a = g.stream(len);
    const std::size_t idx = g.below(len);
    const auto before = static_cast<long>(a.ones());
    const auto after = static_cast<long>(flip_bit(a, idx).ones());
    CHECK(std::abs(after - before) == 1);
  }
}

TEST_CASE("flips at p = 1/L rarely move a stream more than two steps") {
  for (std::size_t len : {8u, 16u, 64u, 256u}) {
    std::vector<long> moved;
    for (int t = 0; t < 2001; ++t) {
      const Bitstream a = bernoulli_stream(len, 0.5, derive_seed(9, t));
      const Bitstream b = inject_bitflips(a, 1.0 / double(len), derive_seed(10, t));
      moved.push_back(std::abs(long(b.ones()) - long(a.ones())));
    }
    std::nth_element(moved.begin(), moved.begin() + 1000, moved.end());
    CHECK(moved[1000] <= 2);
  }
}

TEST_CASE("binary MSB flip changes the word by 2^(n-1)") {
  for (unsigned n = 1; n <= 16; ++n)
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); w += 1 + (w >> 3)) {
      const std::uint64_t f = flip_word_bit(w, n, n - 1);
      const auto diff = static_cast<std::int64_t>(f) - static_cast<std::int64_t>(w);
      CHECK(std::abs(diff) == (std::int64_t{1} << (n - 1)));
    }
}

TEST_CASE("bernoulli_stream is reproducible") {
  CHECK(bernoulli_stream(100, 0.3, 5) == bernoulli_stream(100, 0.3, 5));
  CHECK_FALSE(bernoulli_stream(100, 0.3, 5) == bernoulli_stream(100, 0.3, 6));
}

TEST_CASE("select streams") {
  const auto alt0 = select_stream(AlternatingSelect{}, 0, 8);
  CHECK(alt0 == Bitstream::parse("01010101"));
  CHECK(select_stream(AlternatingSelect{}, 1, 8) == Bitstream::parse("00110011"));
  const auto l0 = select_stream(LfsrSelect{}, 0, 64);
  const auto l1 = select_stream(LfsrSelect{}, 1, 64);
  CHECK(l0 == select_stream(LfsrSelect{}, 0, 64));
  CHECK_FALSE(l0 == l1);
  CHECK_THROWS_AS(select_stream(ExplicitSelect(Bitstream::ones(4)), 1, 4), std::invalid_argument);
}

// ---- LFSR -------------------------------------------------------------------

namespace {

std::uint64_t period(Lfsr l) {
  const std::uint32_t start = l.state();
  std::uint64_t n = 0;
  do {
    l.step();
    ++n;
  } while (l.state() != start && n <= l.max_state() + 1ull);
  return n;
}

}  // namespace

TEST_CASE("lfsr 4-bit sequence visits every nonzero state") {
  Lfsr l(4, {4, 3}, 0b1000);
  std::set<std::uint32_t> seen;
  for (int i = 0; i < 15; ++i) seen.insert(l.step());
  CHECK(seen.size() == 15);
  CHECK(seen.count(0) == 0);
  CHECK(l.state() == 0b1000);
}

TEST_CASE("lfsr 3-bit period") { CHECK(period(Lfsr(3, {3, 2}, 1)) == 7); }

TEST_CASE("every shipped tap set is maximal length") {
  for (unsigned w = 2; w <= 24; ++w) {
    REQUIRE(has_default_taps(w));
    CAPTURE(w);
    CHECK(period(Lfsr::with_default_taps(w, 1)) == (std::uint64_t{1} << w) - 1);
  }
  CHECK_FALSE(has_default_taps(25));
}

TEST_CASE("lfsr validation") {
  CHECK_THROWS(Lfsr(4, {4, 3}, 0));
  CHECK_THROWS(Lfsr(4, {4, 3}, 16));
  CHECK_THROWS(Lfsr(1, {1}, 1));
  CHECK_THROWS(Lfsr(33, {33}, 1));
  CHECK_THROWS(Lfsr(4, {5}, 1));
  CHECK_THROWS(Lfsr(4, {}, 1));
}

TEST_CASE("lfsr_next matches step") {
  Lfsr a = Lfsr::with_default_taps(8, 77);
  Lfsr b = a;
  for (int i = 0; i < 300; ++i) {
    auto [next, out] = lfsr_next(b);
    CHECK(out == a.step());
    b = next;
    CHECK(b.state() == a.state());
  }
}

TEST_CASE("lfsr_seed_from stays in range") {
  Gen g(1);
  for (int i = 0; i < 1000; ++i) {
    const unsigned w = static_cast<unsigned>(g.between(2, 24));
    const std::uint32_t s = lfsr_seed_from(g.next(), w);
    CHECK(s >= 1);
    CHECK(s <= (1u << w) - 1);
  }
}
