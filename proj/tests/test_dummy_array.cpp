// SPDX-License-Identifier: Apache-2.0
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "bramac/dummy_array.hpp"

using namespace bramac;

namespace {

PackedWord word_of(Precision p, const std::vector<std::int64_t>& v) { return PackedWord::pack(v, p); }

// Runs the signed/unsigned micro-op sequence directly on one array.
void run_mac2(DummyArray& a, std::uint32_t i1, std::uint32_t i2, bool sg) {
  const int n = bits(a.precision());
  auto bit = [](std::uint32_t x, int b) { return ((x >> b) & 1) != 0; };
  a.begin_cycle();
  a.sum_weights_init_p();
  if (sg) {
    a.begin_cycle();
    a.invert_selected(bit(i1, n - 1), bit(i2, n - 1));
    a.begin_cycle();
    a.add_psum(false, false, true, true, true);
  } else {
    a.begin_cycle();
    a.add_psum(bit(i1, n - 1), bit(i2, n - 1), false, true, false);
  }
  for (int b = n - 2; b >= 1; --b) {
    a.begin_cycle();
    a.add_psum(bit(i1, b), bit(i2, b), false, true, false);
  }
  a.begin_cycle();
  a.add_psum(bit(i1, 0), bit(i2, 0), false, false, false);
  a.begin_cycle();
  a.accumulate();
}

}  // namespace

TEST_CASE("psum demux") {
  CHECK(select_psum_row(false, false) == DummyRow::Zero);
  CHECK(select_psum_row(true, false) == DummyRow::W1);
  CHECK(select_psum_row(false, true) == DummyRow::W2);
  CHECK(select_psum_row(true, true) == DummyRow::W1W2);
}

TEST_CASE("copy, sum and row isolation") {
  DummyArray a(Precision::Int4);
  a.begin_cycle();
  a.copy_weight(word_of(Precision::Int4, {1, -1, 2, -3}), DummyRow::W1);
  CHECK(a.row(DummyRow::W1).lane(0) == 1);
  CHECK(a.row(DummyRow::W1).lane(1) == -1);
  CHECK(a.row(DummyRow::W1).raw_lane(1) == 0xFFFF);
  CHECK(a.cycle_writes() == (1 << 1));
  a.begin_cycle();
  a.copy_weight(word_of(Precision::Int4, {-1, 1, -2, 3}), DummyRow::W2);
  CHECK(a.row(DummyRow::P) == LaneVector(Precision::Int4));
  CHECK(a.row(DummyRow::Acc) == LaneVector(Precision::Int4));
  a.begin_cycle();
  a.sum_weights_init_p();
  for (int j = 0; j < 4; ++j) CHECK(a.row(DummyRow::W1W2).lane(j) == 0);
  CHECK(a.cycle_writes() == ((1 << 3) | (1 << 5)));
  CHECK_THROWS(a.copy_weight(PackedWord{}, DummyRow::Zero));
  CHECK_THROWS(a.copy_weight(PackedWord{}, DummyRow::P));
}

TEST_CASE("copy round trip and sum on random words") {
  std::mt19937_64 rng(11);
  for (Precision p : {Precision::Int2, Precision::Int4, Precision::Int8}) {
    DummyArray a(p);
    const int n = bits(p), w = info(p).lane_bits;
    for (int t = 0; t < 10000 / 3; ++t) {
      const PackedWord x{rng() & kWordMask}, y{rng() & kWordMask};
      a.begin_cycle();
      a.copy_weight(x, DummyRow::W1);
      a.copy_weight(y, DummyRow::W2);
      a.begin_cycle();
      a.sum_weights_init_p();
      for (int j = 0; j < a.row(DummyRow::W1).lanes(); ++j) {
        auto el = [&](PackedWord v) {
          std::int64_t e = static_cast<std::int64_t>((v.bits >> (j * n)) & ((1u << n) - 1));
          return e >= (1 << (n - 1)) ? e - (1 << n) : e;
        };
        REQUIRE(a.row(DummyRow::W1).lane(j) == el(x));
        REQUIRE(a.row(DummyRow::W2).lane(j) == el(y));
        const std::int64_t s = el(x) + el(y);  // never exceeds a 4p-bit lane
        REQUIRE(a.row(DummyRow::W1W2).lane(j) == s);
        REQUIRE(s < (std::int64_t{1} << (w - 1)));
      }
    }
  }
}

TEST_CASE("invert and add-shift") {
  DummyArray a(Precision::Int2);
  a.begin_cycle();
  a.invert_selected(false, false);
  CHECK(a.row(DummyRow::Inv).raw_lane(0) == 0xFF);

  DummyArray b(Precision::Int8);
  b.begin_cycle();
  b.copy_weight(word_of(Precision::Int8, {5}), DummyRow::W1);
  b.copy_weight(word_of(Precision::Int8, {0}), DummyRow::W2);
  b.begin_cycle();
  b.sum_weights_init_p();
  b.begin_cycle();
  b.invert_selected(true, true);
  CHECK(b.row(DummyRow::Inv).raw_lane(0) == (~5u & 0xFFFFFFFFu));

  DummyArray c(Precision::Int4);
  c.begin_cycle();
  c.copy_weight(word_of(Precision::Int4, {3}), DummyRow::W1);
  c.begin_cycle();
  c.sum_weights_init_p();
  c.begin_cycle();
  c.add_psum(true, false, false, true, false);
  CHECK(c.row(DummyRow::P).lane(0) == 6);
}

TEST_CASE("port limits") {
  DummyArray a(Precision::Int4);
  a.begin_cycle();
  a.sum_weights_init_p();  // two reads, two writes
  CHECK_THROWS(a.accumulate());
}

TEST_CASE("micro-op sequence equals products, exhaustive 2-bit") {
  for (bool sg : {true, false}) {
    const int lo = sg ? -2 : 0, hi = sg ? 1 : 3;
    for (int i1 = lo; i1 <= hi; ++i1)
      for (int i2 = lo; i2 <= hi; ++i2) {
        DummyArray a(Precision::Int2);
        std::vector<std::int64_t> w1s, w2s;
        for (int k = 0; k < 16; ++k) {
          w1s.push_back(k / 4 - 2);
          w2s.push_back(k % 4 - 2);
        }
        a.begin_cycle();
        a.copy_weight(word_of(Precision::Int2, w1s), DummyRow::W1);
        a.copy_weight(word_of(Precision::Int2, w2s), DummyRow::W2);
        run_mac2(a, static_cast<std::uint32_t>(i1) & 3, static_cast<std::uint32_t>(i2) & 3, sg);
        for (int k = 0; k < 16; ++k) {
          REQUIRE(a.row(DummyRow::P).lane(k) == w1s[k] * i1 + w2s[k] * i2);
          REQUIRE(a.row(DummyRow::Acc).lane(k) == w1s[k] * i1 + w2s[k] * i2);
        }
        REQUIRE(a.row(DummyRow::Zero) == LaneVector(Precision::Int2));
      }
  }
}

TEST_CASE("micro-op sequence equals products, random 4/8-bit, and accumulation") {
  std::mt19937_64 rng(12);
  for (Precision p : {Precision::Int4, Precision::Int8}) {
    const int n = bits(p), L = info(p).lanes;
    DummyArray a(p);
    std::vector<std::int64_t> acc(L, 0);
    int count = 0;
    const int trials = 100000 / L + 1;
    for (int t = 0; t < trials; ++t) {
      if (count == info(p).max_dot / 2) {
        a.begin_cycle();
        a.clear_acc();
        std::fill(acc.begin(), acc.end(), 0);
        count = 0;
      }
      const bool sg = rng() & 1;
      std::vector<std::int64_t> w1(L), w2(L);
      for (int j = 0; j < L; ++j) {
        w1[j] = static_cast<std::int64_t>(rng() % (1u << n)) - (1 << (n - 1));
        w2[j] = static_cast<std::int64_t>(rng() % (1u << n)) - (1 << (n - 1));
      }
      std::int64_t i1 = static_cast<std::int64_t>(rng() % (1u << n));
      std::int64_t i2 = static_cast<std::int64_t>(rng() % (1u << n));
      const std::uint32_t r1 = static_cast<std::uint32_t>(i1), r2 = static_cast<std::uint32_t>(i2);
      if (sg) {
        if (i1 >= (1 << (n - 1))) i1 -= 1 << n;
        if (i2 >= (1 << (n - 1))) i2 -= 1 << n;
      }
      a.begin_cycle();
      a.copy_weight(word_of(p, w1), DummyRow::W1);
      a.copy_weight(word_of(p, w2), DummyRow::W2);
      run_mac2(a, r1, r2, sg);
      ++count;
      for (int j = 0; j < L; ++j) {
        acc[j] += w1[j] * i1 + w2[j] * i2;
        REQUIRE(a.row(DummyRow::P).lane(j) == w1[j] * i1 + w2[j] * i2);
        REQUIRE(a.row(DummyRow::Acc).lane(j) == acc[j]);
      }
    }
  }
}

TEST_CASE("accumulator chunks") {
  DummyArray a(Precision::Int8);
  for (int c = 0; c < 4; ++c) CHECK(a.read_acc_chunk(c).bits == 0);
  CHECK_THROWS(a.read_acc_chunk(4));
  DummyArray b(Precision::Int4);
  b.begin_cycle();
  b.copy_weight(word_of(Precision::Int4, {1, 2, 3, 4, 5, 6, 7, -8, -1, -2}), DummyRow::W1);
  b.copy_weight(word_of(Precision::Int4, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0}), DummyRow::W2);
  run_mac2(b, 1, 0, true);
  const std::int64_t expect[] = {1, 2, 3, 4, 5, 6, 7, -8, -1, -2};
  // oracle: pack each value into 16-bit slots
  std::uint64_t chunk[4] = {};
  for (int j = 0; j < 10; ++j) {
    const int bit = j * 16;
    const std::uint64_t v = static_cast<std::uint64_t>(expect[j]) & 0xFFFF;
    for (int k = 0; k < 16; ++k)
      if ((v >> k) & 1) chunk[(bit + k) / 40] |= std::uint64_t{1} << ((bit + k) % 40);
  }
  for (int c = 0; c < 4; ++c) CHECK(b.read_acc_chunk(c).bits == chunk[c]);
}

TEST_CASE("zero row stays zero under fuzzed sequences") {
  std::mt19937_64 rng(13);
  DummyArray a(Precision::Int2);
  for (int t = 0; t < 5000; ++t) {
    a.begin_cycle();
    switch (rng() % 6) {
      case 0: a.copy_weight(PackedWord{rng() & kWordMask}, (rng() & 1) ? DummyRow::W1 : DummyRow::W2); break;
      case 1: a.sum_weights_init_p(); break;
      case 2: a.invert_selected(rng() & 1, rng() & 1); break;
      case 3: a.add_psum(rng() & 1, rng() & 1, rng() & 1, rng() & 1, rng() & 1); break;
      case 4: a.accumulate(); break;
      case 5: a.clear_acc(); break;
    }
    REQUIRE(a.row(DummyRow::Zero) == LaneVector(Precision::Int2));
  }
}
