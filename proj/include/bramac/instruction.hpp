// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bramac/bitmath.hpp"

namespace bramac {

enum class Variant : std::uint8_t { TwoSA, OneDA };

struct VariantInfo {
  int dummy_arrays;
  int clock_ratio;         // dummy-array ticks per main-array cycle
  int port_busy_per_mac2;  // main-array cycles
  int readout_cycles;
  int prologue_cycles;     // cycles before the first MAC2's SumInit tick
};

constexpr VariantInfo info(Variant v) {
  return v == Variant::TwoSA ? VariantInfo{2, 1, 2, 8, 2} : VariantInfo{1, 2, 1, 4, 1};
}

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);  // "2sa" / "1da", case-insensitive

// Dummy-array ticks taken by one MAC2 program, excluding the weight copy.
int mac2_ticks(Precision p, bool signed_inputs);
// Main-array cycles between MAC2 starts in a back-to-back stream.
int mac2_latency(Variant v, Precision p, bool signed_inputs);

struct CimInstruction {
  Precision prec = Precision::Int2;
  bool unsigned_inputs = false;  // inType
  bool reset = false;
  bool start = false;
  bool copy = false;
  bool done = false;
  bool w2 = false;       // 2SA w1_w2: this copy targets W2
  int row = 0;           // 2SA bramRow, 1DA bramRow1
  int row2 = 0;          // 1DA bramRow2
  int col = 0;           // bramCol
  std::uint32_t input_a = 0;  // raw p-bit pattern, right aligned
  std::uint32_t input_b = 0;

  friend bool operator==(const CimInstruction&, const CimInstruction&) = default;
};

// Field layout, most significant bit first:
//   2SA: prec:2 inType:1 reset:1 start:1 copy:1 w1_w2:1 done:1 bramRow:7 bramCol:2 Ia:8 Ib:8 reserved:7
//   1DA: prec:2 inType:1 reset:1 start:1 copy:1 done:1 bramRow1:7 bramRow2:7 bramCol:2 I1:8 I2:8 reserved:1
// Fields that do not exist in a variant must be zero on encode.
std::uint64_t encode(const CimInstruction& ins, Variant v);
CimInstruction decode(std::uint64_t word, Variant v);

std::vector<std::uint64_t> read_instruction_hex(std::istream& in);
void write_instruction_hex(std::ostream& out, const std::vector<std::uint64_t>& words);

}  // namespace bramac
