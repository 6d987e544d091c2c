// SPDX-License-Identifier: Apache-2.0
#include "bramac/dummy_array.hpp"

#include <stdexcept>

namespace bramac {

std::string to_string(DummyRow r) {
  static const char* names[] = {"ZERO", "W1", "W2", "W1W2", "INV", "P", "ACC"};
  return names[static_cast<int>(r)];
}

DummyRow select_psum_row(bool i1_bit, bool i2_bit) {
  if (i1_bit && i2_bit) return DummyRow::W1W2;
  if (i1_bit) return DummyRow::W1;
  if (i2_bit) return DummyRow::W2;
  return DummyRow::Zero;
}

std::string row_mask_string(RowMask m) {
  std::string s;
  for (int r = 0; r < kDummyRows; ++r) {
    if (!((m >> r) & 1)) continue;
    if (!s.empty()) s += '|';
    s += to_string(static_cast<DummyRow>(r));
  }
  return s;
}

DummyArray::DummyArray(Precision p) { set_precision(p); }

void DummyArray::set_precision(Precision p) {
  prec_ = p;
  for (auto& r : rows_) r = LaneVector(p);
}

void DummyArray::begin_cycle() {
  writes_ = 0;
  reads_ = 0;
  write_count_ = 0;
}

const LaneVector& DummyArray::read(DummyRow r) {
  if (++reads_ > 2) throw std::logic_error("dummy array: more than two row reads in one cycle");
  return rows_[static_cast<int>(r)];
}

void DummyArray::write(DummyRow r, const LaneVector& v) {
  if (r == DummyRow::Zero) throw std::logic_error("dummy array: ZERO row is read-only");
  if (++write_count_ > 2) throw std::logic_error("dummy array: more than two row writes in one cycle");
  rows_[static_cast<int>(r)] = v;
  writes_ |= RowMask(1u << static_cast<int>(r));
}

LaneVector DummyArray::adder(const LaneVector& a, const LaneVector& b, bool cin) const {
  LaneVector s = simd_add(a, b, cin);
  if (fault_bit_) s.set_bit(*fault_bit_, !s.bit(*fault_bit_));
  return s;
}

void DummyArray::copy_weight(PackedWord word, DummyRow which) {
  if (which != DummyRow::W1 && which != DummyRow::W2) throw std::invalid_argument("weights copy only into W1 or W2");
  write(which, sign_extend_word(word, prec_));
}

void DummyArray::sum_weights_init_p() {
  const LaneVector& a = read(DummyRow::W1);
  const LaneVector& b = read(DummyRow::W2);
  LaneVector s = adder(a, b, false);
  write(DummyRow::W1W2, s);
  write(DummyRow::P, LaneVector(prec_));
}

void DummyArray::invert_selected(bool i1_bit, bool i2_bit) {
  write(DummyRow::Inv, lane_invert(read(select_psum_row(i1_bit, i2_bit))));
}

void DummyArray::add_psum(bool i1_bit, bool i2_bit, bool use_inv, bool shift_after, bool carry_in) {
  const LaneVector& src = read(use_inv ? DummyRow::Inv : select_psum_row(i1_bit, i2_bit));
  const LaneVector& p = read(DummyRow::P);
  LaneVector t = adder(p, src, carry_in);
  write(DummyRow::P, shift_after ? lane_shl1(t) : t);
}

void DummyArray::accumulate() {
  const LaneVector& acc = read(DummyRow::Acc);
  const LaneVector& p = read(DummyRow::P);
  write(DummyRow::Acc, adder(acc, p, false));
}

void DummyArray::clear_acc() { write(DummyRow::Acc, LaneVector(prec_)); }

PackedWord DummyArray::read_acc_chunk(int col) const {
  if (col < 0 || col > 3) throw std::out_of_range("accumulator chunk index " + std::to_string(col));
  return PackedWord{row(DummyRow::Acc).field(col * kWordBits, kWordBits)};
}

}  // namespace bramac
