// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "bramac/bitmath.hpp"

namespace bramac {

enum class DummyRow : std::uint8_t { Zero = 0, W1 = 1, W2 = 2, W1W2 = 3, Inv = 4, P = 5, Acc = 6 };
constexpr int kDummyRows = 7;

std::string to_string(DummyRow r);

// 2-to-4 demux over one bit of each input.
DummyRow select_psum_row(bool i1_bit, bool i2_bit);

// Bit mask over DummyRow values, bit r set when row r was written.
using RowMask = std::uint8_t;
std::string row_mask_string(RowMask m);

// 7 x 160 dual-port array with a SIMD adder. Each micro-op reads at most two
// rows and writes at most two rows; begin_cycle() resets the per-cycle port
// counters and the write mask used for traces.
class DummyArray {
 public:
  explicit DummyArray(Precision p = Precision::Int8);

  Precision precision() const { return prec_; }
  // Changes lane geometry for all rows; row contents are cleared.
  void set_precision(Precision p);

  const LaneVector& row(DummyRow r) const { return rows_[static_cast<int>(r)]; }

  void begin_cycle();
  RowMask cycle_writes() const { return writes_; }

  void copy_weight(PackedWord word, DummyRow which);
  void sum_weights_init_p();
  void invert_selected(bool i1_bit, bool i2_bit);
  void add_psum(bool i1_bit, bool i2_bit, bool use_inv, bool shift_after, bool carry_in);
  void accumulate();
  void clear_acc();
  PackedWord read_acc_chunk(int col) const;

  // Test hook: flips one bit of every SIMD adder result.
  void inject_adder_fault(std::optional<int> bit) { fault_bit_ = bit; }

 private:
  LaneVector adder(const LaneVector& a, const LaneVector& b, bool cin) const;
  const LaneVector& read(DummyRow r);
  void write(DummyRow r, const LaneVector& v);

  std::array<LaneVector, kDummyRows> rows_;
  Precision prec_;
  RowMask writes_ = 0;
  int reads_ = 0, write_count_ = 0;
  std::optional<int> fault_bit_;
};

}  // namespace bramac
