// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace bramac {

enum class Precision : std::uint8_t { Int2 = 0, Int4 = 1, Int8 = 2 };

struct PrecisionInfo {
  int operand_bits;   // p
  int lane_bits;      // w = 4p
  int lanes;          // L, lanes per 160-bit row and per 40-bit word
  int macs_per_mac2;  // 2L
  int max_dot;        // dot length between accumulator readouts
  int acc_bits;
};

constexpr PrecisionInfo info(Precision p) {
  switch (p) {
    case Precision::Int2: return {2, 8, 20, 40, 16, 8};
    case Precision::Int4: return {4, 16, 10, 20, 256, 16};
    case Precision::Int8: return {8, 32, 5, 10, 2048, 32};
  }
  return {0, 0, 0, 0, 0, 0};
}

constexpr int bits(Precision p) { return info(p).operand_bits; }

std::optional<Precision> precision_from_bits(int operand_bits);
// Throws std::invalid_argument for anything but 2, 4, 8.
Precision parse_precision(int operand_bits);
std::string to_string(Precision p);

constexpr int kRowBits = 160;
constexpr int kWordBits = 40;
constexpr std::uint64_t kWordMask = (std::uint64_t{1} << kWordBits) - 1;

std::int64_t min_value(int width, bool is_signed);
std::int64_t max_value(int width, bool is_signed);
bool fits(std::int64_t v, int width, bool is_signed);
// Interprets the low `width` bits of raw as a 2's-complement value.
std::int64_t to_signed(std::uint64_t raw, int width);
std::uint64_t to_raw(std::int64_t v, int width);

// 160-bit row; lane j occupies bits [j*w, (j+1)*w). w divides 64, so a lane
// never straddles a storage word.
class LaneVector {
 public:
  LaneVector() = default;
  explicit LaneVector(Precision p) : prec_(p) {}

  Precision precision() const { return prec_; }
  int lanes() const { return info(prec_).lanes; }
  int lane_bits() const { return info(prec_).lane_bits; }

  std::uint64_t raw_lane(int j) const;
  std::int64_t lane(int j) const;
  void set_raw_lane(int j, std::uint64_t v);
  void set_lane(int j, std::int64_t v);

  bool bit(int i) const;
  void set_bit(int i, bool v);
  // Arbitrary bit field of up to 64 bits starting at `offset`.
  std::uint64_t field(int offset, int width) const;
  void set_field(int offset, int width, std::uint64_t v);

  const std::array<std::uint64_t, 3>& storage() const { return words_; }

  friend bool operator==(const LaneVector& a, const LaneVector& b) {
    return a.prec_ == b.prec_ && a.words_ == b.words_;
  }

 private:
  std::array<std::uint64_t, 3> words_{};  // 192 bits, top 32 always zero
  Precision prec_ = Precision::Int8;
};

// 40-bit word holding 40/p elements; element j in bits [j*p, (j+1)*p).
struct PackedWord {
  std::uint64_t bits = 0;

  std::uint64_t raw_element(int j, Precision p) const;
  std::int64_t element(int j, Precision p) const;
  void set_element(int j, Precision p, std::int64_t v);
  static PackedWord pack(std::span<const std::int64_t> elems, Precision p);

  friend bool operator==(PackedWord a, PackedWord b) { return a.bits == b.bits; }
};

LaneVector sign_extend_word(PackedWord word, Precision p);
LaneVector simd_add(const LaneVector& a, const LaneVector& b, bool carry_in);
LaneVector lane_shl1(const LaneVector& a);
LaneVector lane_invert(const LaneVector& a);

struct Mac2Operands {
  std::int64_t w1 = 0, w2 = 0, i1 = 0, i2 = 0;
};

// Throws std::out_of_range when an operand does not fit its width.
void check_operands(const Mac2Operands& op, Precision p, bool signed_inputs);

std::int64_t mac2_reference(const Mac2Operands& op, Precision p, bool signed_inputs);

struct Alg1Result {
  std::int64_t value = 0;
  std::int64_t peak_magnitude = 0;  // largest |P| after any add
  bool lane_overflow = false;       // some intermediate left the w-bit range
};

// The hybrid bit-serial/bit-parallel loop on one lane of width 4p.
Alg1Result alg1_mac2_traced(const Mac2Operands& op, Precision p, bool signed_inputs);
std::int64_t alg1_mac2(const Mac2Operands& op, Precision p, bool signed_inputs);

struct AccumulatorHeadroom {
  int max_dot;              // documented readout interval
  std::int64_t worst_case;  // largest |sum| over max_dot products
  bool safe;
  std::int64_t safe_length; // longest dot length that can never overflow
};

AccumulatorHeadroom accumulator_headroom(Precision p, bool signed_inputs);

}  // namespace bramac
