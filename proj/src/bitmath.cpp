// SPDX-License-Identifier: Apache-2.0
#include "bramac/bitmath.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace bramac {

std::optional<Precision> precision_from_bits(int operand_bits) {
  switch (operand_bits) {
    case 2: return Precision::Int2;
    case 4: return Precision::Int4;
    case 8: return Precision::Int8;
    default: return std::nullopt;
  }
}

Precision parse_precision(int operand_bits) {
  auto p = precision_from_bits(operand_bits);
  if (!p) throw std::invalid_argument("unsupported precision: " + std::to_string(operand_bits) + " bits");
  return *p;
}

std::string to_string(Precision p) { return std::to_string(bits(p)) + "-bit"; }

std::int64_t min_value(int width, bool is_signed) {
  return is_signed ? -(std::int64_t{1} << (width - 1)) : 0;
}

std::int64_t max_value(int width, bool is_signed) {
  return is_signed ? (std::int64_t{1} << (width - 1)) - 1 : (std::int64_t{1} << width) - 1;
}

bool fits(std::int64_t v, int width, bool is_signed) {
  return v >= min_value(width, is_signed) && v <= max_value(width, is_signed);
}

static std::uint64_t mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

std::int64_t to_signed(std::uint64_t raw, int width) {
  raw &= mask(width);
  if (width < 64 && (raw >> (width - 1)) & 1) return static_cast<std::int64_t>(raw | ~mask(width));
  return static_cast<std::int64_t>(raw);
}

std::uint64_t to_raw(std::int64_t v, int width) { return static_cast<std::uint64_t>(v) & mask(width); }

// ---- LaneVector ----

static void check_lane(const LaneVector& v, int j) {
  if (j < 0 || j >= v.lanes()) throw std::out_of_range("lane index " + std::to_string(j));
}

std::uint64_t LaneVector::raw_lane(int j) const {
  check_lane(*this, j);
  return field(j * lane_bits(), lane_bits());
}

std::int64_t LaneVector::lane(int j) const { return to_signed(raw_lane(j), lane_bits()); }

void LaneVector::set_raw_lane(int j, std::uint64_t v) {
  check_lane(*this, j);
  set_field(j * lane_bits(), lane_bits(), v);
}

void LaneVector::set_lane(int j, std::int64_t v) { set_raw_lane(j, to_raw(v, lane_bits())); }

bool LaneVector::bit(int i) const {
  if (i < 0 || i >= kRowBits) throw std::out_of_range("bit index " + std::to_string(i));
  return (words_[i / 64] >> (i % 64)) & 1;
}

void LaneVector::set_bit(int i, bool v) {
  if (i < 0 || i >= kRowBits) throw std::out_of_range("bit index " + std::to_string(i));
  const std::uint64_t m = std::uint64_t{1} << (i % 64);
  words_[i / 64] = v ? (words_[i / 64] | m) : (words_[i / 64] & ~m);
}

std::uint64_t LaneVector::field(int offset, int width) const {
  if (offset < 0 || width < 1 || width > 64 || offset + width > kRowBits)
    throw std::out_of_range("bad row field");
  const int wi = offset / 64, sh = offset % 64;
  std::uint64_t v = words_[wi] >> sh;
  if (sh != 0 && sh + width > 64) v |= words_[wi + 1] << (64 - sh);
  return v & mask(width);
}

void LaneVector::set_field(int offset, int width, std::uint64_t v) {
  if (offset < 0 || width < 1 || width > 64 || offset + width > kRowBits)
    throw std::out_of_range("bad row field");
  v &= mask(width);
  const int wi = offset / 64, sh = offset % 64;
  words_[wi] = (words_[wi] & ~(mask(width) << sh)) | (v << sh);
  if (sh != 0 && sh + width > 64) {
    const int hi = sh + width - 64;
    words_[wi + 1] = (words_[wi + 1] & ~mask(hi)) | (v >> (64 - sh));
  }
}

// ---- PackedWord ----

std::uint64_t PackedWord::raw_element(int j, Precision p) const {
  const int n = bramac::bits(p);
  if (j < 0 || j >= kWordBits / n) throw std::out_of_range("element index " + std::to_string(j));
  return (bits >> (j * n)) & mask(n);
}

std::int64_t PackedWord::element(int j, Precision p) const { return to_signed(raw_element(j, p), bramac::bits(p)); }

void PackedWord::set_element(int j, Precision p, std::int64_t v) {
  const int n = bramac::bits(p);
  if (j < 0 || j >= kWordBits / n) throw std::out_of_range("element index " + std::to_string(j));
  if (!fits(v, n, true)) throw std::out_of_range("element does not fit " + to_string(p));
  bits = (bits & ~(mask(n) << (j * n))) | (to_raw(v, n) << (j * n));
}

PackedWord PackedWord::pack(std::span<const std::int64_t> elems, Precision p) {
  if (static_cast<int>(elems.size()) > kWordBits / bramac::bits(p)) throw std::out_of_range("too many elements for one word");
  PackedWord w;
  for (std::size_t j = 0; j < elems.size(); ++j) w.set_element(static_cast<int>(j), p, elems[j]);
  return w;
}

// ---- lane operations ----

LaneVector sign_extend_word(PackedWord word, Precision p) {
  LaneVector out(p);
  for (int j = 0; j < out.lanes(); ++j) out.set_lane(j, word.element(j, p));
  return out;
}

LaneVector simd_add(const LaneVector& a, const LaneVector& b, bool carry_in) {
  if (a.precision() != b.precision()) throw std::invalid_argument("simd_add precision mismatch");
  LaneVector out(a.precision());
  for (int j = 0; j < a.lanes(); ++j) out.set_raw_lane(j, a.raw_lane(j) + b.raw_lane(j) + (carry_in ? 1 : 0));
  return out;
}

LaneVector lane_shl1(const LaneVector& a) {
  LaneVector out(a.precision());
  for (int j = 0; j < a.lanes(); ++j) out.set_raw_lane(j, a.raw_lane(j) << 1);
  return out;
}

LaneVector lane_invert(const LaneVector& a) {
  LaneVector out(a.precision());
  for (int j = 0; j < a.lanes(); ++j) out.set_raw_lane(j, ~a.raw_lane(j));
  return out;
}

// ---- MAC2 ----

void check_operands(const Mac2Operands& op, Precision p, bool signed_inputs) {
  const int n = bits(p);
  if (!fits(op.w1, n, true) || !fits(op.w2, n, true)) throw std::out_of_range("weight out of range for " + to_string(p));
  if (!fits(op.i1, n, signed_inputs) || !fits(op.i2, n, signed_inputs))
    throw std::out_of_range("input out of range for " + to_string(p));
}

std::int64_t mac2_reference(const Mac2Operands& op, Precision p, bool signed_inputs) {
  check_operands(op, p, signed_inputs);
  return op.w1 * op.i1 + op.w2 * op.i2;
}

Alg1Result alg1_mac2_traced(const Mac2Operands& op, Precision p, bool signed_inputs) {
  check_operands(op, p, signed_inputs);
  const int n = bits(p);
  const int w = info(p).lane_bits;
  const std::uint64_t i1 = to_raw(op.i1, n), i2 = to_raw(op.i2, n);
  const std::uint64_t w1 = to_raw(op.w1, w), w2 = to_raw(op.w2, w);

  Alg1Result r;
  std::uint64_t P = 0;
  std::int64_t exact = 0;
  auto note = [&] {
    r.peak_magnitude = std::max(r.peak_magnitude, exact < 0 ? -exact : exact);
    if (!fits(exact, w, true)) r.lane_overflow = true;
  };
  for (int i = n - 1; i >= 0; --i) {
    const bool b1 = (i1 >> i) & 1, b2 = (i2 >> i) & 1;
    const std::uint64_t psum = (b1 ? w1 : 0) + (b2 ? w2 : 0);
    const std::int64_t psum_exact = (b1 ? op.w1 : 0) + (b2 ? op.w2 : 0);
    if (i == n - 1 && signed_inputs) {
      P = P + (~psum & mask(w)) + 1;
      exact -= psum_exact;
    } else {
      P = P + psum;
      exact += psum_exact;
    }
    P &= mask(w);
    note();
    if (i != 0) {
      P = (P << 1) & mask(w);
      exact *= 2;
      note();
    }
  }
  r.value = to_signed(P, w);
  return r;
}

std::int64_t alg1_mac2(const Mac2Operands& op, Precision p, bool signed_inputs) {
  const Alg1Result r = alg1_mac2_traced(op, p, signed_inputs);
  assert(!r.lane_overflow && "MAC2 intermediate overflowed its lane");
  return r.value;
}

AccumulatorHeadroom accumulator_headroom(Precision p, bool signed_inputs) {
  const PrecisionInfo pi = info(p);
  const int n = pi.operand_bits;
  const std::int64_t wmin = min_value(n, true), wmax = max_value(n, true);
  const std::int64_t imin = min_value(n, signed_inputs), imax = max_value(n, signed_inputs);
  const std::int64_t corners[] = {wmin * imin, wmin * imax, wmax * imin, wmax * imax};
  const std::int64_t hi = *std::max_element(std::begin(corners), std::end(corners));
  const std::int64_t lo = *std::min_element(std::begin(corners), std::end(corners));
  const std::int64_t acc_hi = max_value(pi.acc_bits, true), acc_lo = min_value(pi.acc_bits, true);

  AccumulatorHeadroom h{};
  h.max_dot = pi.max_dot;
  h.worst_case = std::max(hi * pi.max_dot, -lo * pi.max_dot);
  std::int64_t len_hi = hi > 0 ? acc_hi / hi : INT64_MAX;
  std::int64_t len_lo = lo < 0 ? acc_lo / lo : INT64_MAX;
  h.safe_length = std::min(len_hi, len_lo);
  h.safe = h.safe_length >= pi.max_dot;
  return h;
}

}  // namespace bramac
