// SPDX-License-Identifier: Apache-2.0
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "bramac/bitmath.hpp"

using namespace bramac;

namespace {

// Independent oracle: value of x modulo 2^w, read back as signed.
std::int64_t wrap(std::int64_t x, int w) {
  const std::int64_t m = std::int64_t{1} << w;
  std::int64_t r = ((x % m) + m) % m;
  return r >= m / 2 ? r - m : r;
}

LaneVector lanes_of(Precision p, const std::vector<std::int64_t>& v) {
  LaneVector out(p);
  for (std::size_t j = 0; j < v.size(); ++j) out.set_lane(static_cast<int>(j), v[j]);
  return out;
}

const Precision kAll[] = {Precision::Int2, Precision::Int4, Precision::Int8};

}  // namespace

TEST_CASE("precision table") {
  for (Precision p : kAll) {
    const auto pi = info(p);
    CHECK(pi.lane_bits == 4 * pi.operand_bits);
    CHECK(pi.lanes * pi.lane_bits == 160);
    CHECK(pi.macs_per_mac2 == 2 * pi.lanes);
    CHECK(pi.acc_bits == pi.lane_bits);
  }
  CHECK(info(Precision::Int2).max_dot == 16);
  CHECK(info(Precision::Int4).max_dot == 256);
  CHECK(info(Precision::Int8).max_dot == 2048);
  CHECK(parse_precision(4) == Precision::Int4);
  CHECK_THROWS(parse_precision(3));
}

TEST_CASE("sign extension") {
  PackedWord w;
  w.bits = 0b1010;
  CHECK(sign_extend_word(w, Precision::Int4).raw_lane(0) == 0xFFFA);
  CHECK(sign_extend_word(w, Precision::Int4).lane(0) == -6);
  w.bits = 0b01;
  CHECK(sign_extend_word(w, Precision::Int2).raw_lane(0) == 0x01);
  w.bits = 0x80;
  CHECK(sign_extend_word(w, Precision::Int8).raw_lane(0) == 0xFFFFFF80u);

  std::mt19937_64 rng(1);
  for (Precision p : kAll) {
    for (int t = 0; t < 2000; ++t) {
      PackedWord x{rng() & kWordMask};
      const LaneVector v = sign_extend_word(x, p);
      const int n = bits(p);
      for (int j = 0; j < v.lanes(); ++j) {
        std::int64_t e = static_cast<std::int64_t>((x.bits >> (j * n)) & ((1u << n) - 1));
        if (e >= (1 << (n - 1))) e -= 1 << n;
        REQUIRE(v.lane(j) == e);
      }
    }
  }
}

TEST_CASE("simd_add") {
  auto a = lanes_of(Precision::Int8, {1, -1, 0, 7, -8});
  auto b = lanes_of(Precision::Int8, {2, 1, 0, -7, 8});
  CHECK(simd_add(a, b, false) == lanes_of(Precision::Int8, {3, 0, 0, 0, 0}));
  CHECK(simd_add(a, LaneVector(Precision::Int8), false) == a);

  std::mt19937_64 rng(2);
  for (Precision p : kAll) {
    const int w = info(p).lane_bits;
    for (int t = 0; t < 100000 / 3; ++t) {
      LaneVector x(p), y(p);
      std::vector<std::int64_t> xs, ys;
      for (int j = 0; j < x.lanes(); ++j) {
        xs.push_back(wrap(static_cast<std::int64_t>(rng()), w));
        ys.push_back(wrap(static_cast<std::int64_t>(rng()), w));
        x.set_lane(j, xs.back());
        y.set_lane(j, ys.back());
      }
      const bool cin = rng() & 1;
      const LaneVector s = simd_add(x, y, cin);
      for (int j = 0; j < x.lanes(); ++j) REQUIRE(s.lane(j) == wrap(xs[j] + ys[j] + cin, w));
    }
  }
}

TEST_CASE("simd_add lane isolation") {
  std::mt19937_64 rng(3);
  for (Precision p : kAll) {
    for (int t = 0; t < 500; ++t) {
      LaneVector a(p), b(p);
      for (int j = 0; j < a.lanes(); ++j) {
        a.set_raw_lane(j, rng());
        b.set_raw_lane(j, rng());
      }
      const LaneVector s = simd_add(a, b, true);
      const int k = static_cast<int>(rng() % a.lanes());
      LaneVector c = a;
      c.set_raw_lane(k, rng());
      const LaneVector s2 = simd_add(c, b, true);
      for (int j = 0; j < a.lanes(); ++j)
        if (j != k) REQUIRE(s.raw_lane(j) == s2.raw_lane(j));
    }
  }
}

TEST_CASE("lane_shl1 and lane_invert") {
  auto a = lanes_of(Precision::Int2, {1});
  CHECK(lane_shl1(a).raw_lane(0) == 0x02);
  LaneVector b(Precision::Int2);
  b.set_raw_lane(0, 0x80);
  b.set_raw_lane(1, 0x01);
  const LaneVector s = lane_shl1(b);
  CHECK(s.raw_lane(0) == 0x00);
  CHECK(s.raw_lane(1) == 0x02);

  CHECK(lane_invert(LaneVector(Precision::Int2)).raw_lane(0) == 0xFF);

  // Every 8-bit lane value: ~x + x + 1 == 0 and involution.
  for (int x = 0; x < 256; ++x) {
    LaneVector v(Precision::Int2);
    for (int j = 0; j < v.lanes(); ++j) v.set_raw_lane(j, static_cast<std::uint64_t>(x));
    const LaneVector z = simd_add(lane_invert(v), v, true);
    for (int j = 0; j < v.lanes(); ++j) REQUIRE(z.raw_lane(j) == 0);
    REQUIRE(lane_invert(lane_invert(v)) == v);
  }

  std::mt19937_64 rng(4);
  for (Precision p : kAll) {
    const int w = info(p).lane_bits;
    for (int t = 0; t < 100000 / 3; ++t) {
      LaneVector v(p);
      std::vector<std::int64_t> xs;
      for (int j = 0; j < v.lanes(); ++j) {
        xs.push_back(wrap(static_cast<std::int64_t>(rng()), w));
        v.set_lane(j, xs.back());
      }
      const LaneVector s = lane_shl1(v);
      for (int j = 0; j < v.lanes(); ++j) REQUIRE(s.lane(j) == wrap(2 * xs[j], w));
    }
  }
}

TEST_CASE("mac2 reference and the bit-serial loop agree") {
  CHECK(mac2_reference({3, -2, 1, 2}, Precision::Int4, true) == -1);
  CHECK(alg1_mac2({3, -2, 1, 2}, Precision::Int4, true) == -1);
  CHECK(alg1_mac2({-128, 127, -128, 127}, Precision::Int8, true) == -128 * -128 + 127 * 127);
  CHECK(mac2_reference({0, 0, 1, -1}, Precision::Int2, true) == 0);
  CHECK_THROWS_AS(mac2_reference({2, 0, 0, 0}, Precision::Int2, true), std::out_of_range);
  CHECK_THROWS_AS(mac2_reference({0, 0, 4, 0}, Precision::Int2, false), std::out_of_range);

  // Exhaustive 2-bit, both input types.
  for (int s = 0; s < 2; ++s) {
    const bool sg = s == 0;
    const int lo = sg ? -2 : 0, hi = sg ? 1 : 3;
    for (int w1 = -2; w1 <= 1; ++w1)
      for (int w2 = -2; w2 <= 1; ++w2)
        for (int i1 = lo; i1 <= hi; ++i1)
          for (int i2 = lo; i2 <= hi; ++i2) {
            const Alg1Result r = alg1_mac2_traced({w1, w2, i1, i2}, Precision::Int2, sg);
            REQUIRE(r.value == w1 * i1 + w2 * i2);
            REQUIRE_FALSE(r.lane_overflow);
          }
  }

  std::mt19937_64 rng(5);
  for (Precision p : {Precision::Int4, Precision::Int8}) {
    const int n = bits(p);
    for (int t = 0; t < 100000; ++t) {
      const bool sg = rng() & 1;
      auto wv = [&] { return static_cast<std::int64_t>(rng() % (1u << n)) - (1 << (n - 1)); };
      auto iv = [&] {
        const std::int64_t u = static_cast<std::int64_t>(rng() % (1u << n));
        return sg ? u - (1 << (n - 1)) : u;
      };
      const Mac2Operands op{wv(), wv(), iv(), iv()};
      const Alg1Result r = alg1_mac2_traced(op, p, sg);
      REQUIRE(r.value == op.w1 * op.i1 + op.w2 * op.i2);
      REQUIRE_FALSE(r.lane_overflow);
    }
  }
}

TEST_CASE("accumulator headroom over max_dot") {
  for (Precision p : kAll) {
    for (bool sg : {true, false}) {
      const auto h = accumulator_headroom(p, sg);
      CHECK(h.max_dot == info(p).max_dot);
      CHECK(h.safe);
    }
  }
  // 2-bit signed: the largest product is (-2)(-2)=4, 16 of them give 64 <= 127.
  const auto h = accumulator_headroom(Precision::Int2, true);
  CHECK(h.worst_case == 64);
  CHECK(h.safe_length == 31);
  // Unsigned 2-bit inputs: (-2)*3 = -6 is the extreme, -128/-6 -> 21.
  CHECK(accumulator_headroom(Precision::Int2, false).safe_length == 21);
}
