// SPDX-License-Identifier: Apache-2.0
#include "bramac/bram_block.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bramac {

CimAddress CimAddress::from_index(int index) {
  if (index < 0 || index >= kMainWords) throw std::out_of_range("word index " + std::to_string(index));
  return {index / 4, index % 4};
}

bool is_cim_trigger(std::uint32_t port_a_addr) { return port_a_addr == kCimTriggerAddress; }

static void check_address(CimAddress a) {
  if (a.row < 0 || a.row >= kMainRows || a.col < 0 || a.col > 3)
    throw std::out_of_range("CIM address out of range: row " + std::to_string(a.row) + " col " +
                            std::to_string(a.col));
}

PackedWord MainArray::read40(CimAddress a) const {
  check_address(a);
  return PackedWord{words_[a.word_index()]};
}

void MainArray::write40(CimAddress a, PackedWord w) {
  check_address(a);
  set_word(a.word_index(), w.bits);
}

std::uint64_t MainArray::word(int index) const {
  if (index < 0 || index >= kMainWords) throw std::out_of_range("word index " + std::to_string(index));
  return words_[index];
}

void MainArray::set_word(int index, std::uint64_t v) {
  if (index < 0 || index >= kMainWords) throw std::out_of_range("word index " + std::to_string(index));
  observe_write(index);
  words_[index] = v & kWordMask;
}

std::array<PortResult, 2> MainArray::access(const std::optional<PortOp>& a, const std::optional<PortOp>& b,
                                            AspectRatio ar) {
  const int depth = ar == AspectRatio::W512x40 ? 512 : 1024;
  const int width = ar == AspectRatio::W512x40 ? 40 : 20;
  const std::uint64_t wmask = (std::uint64_t{1} << width) - 1;
  const std::optional<PortOp>* ops[2] = {&a, &b};
  for (auto* op : ops)
    if (*op && (*op)->addr >= static_cast<std::uint32_t>(depth))
      throw std::out_of_range("port address " + std::to_string((*op)->addr) + " beyond depth " + std::to_string(depth));
  if (a && b && a->write && b->write && a->addr == b->addr)
    throw std::logic_error("write-write conflict at address " + std::to_string(a->addr));

  auto locate = [&](std::uint32_t addr, int& idx, int& shift) {
    idx = ar == AspectRatio::W512x40 ? static_cast<int>(addr) : static_cast<int>(addr >> 1);
    shift = ar == AspectRatio::W512x40 ? 0 : 20 * static_cast<int>(addr & 1);
  };

  std::array<PortResult, 2> out;
  for (int k = 0; k < 2; ++k) {
    const auto& op = *ops[k];
    if (!op || op->write) continue;
    int idx, shift;
    locate(op->addr, idx, shift);
    out[k].read = (words_[idx] >> shift) & wmask;
  }
  for (int k = 0; k < 2; ++k) {
    const auto& op = *ops[k];
    if (!op || !op->write) continue;
    int idx, shift;
    locate(op->addr, idx, shift);
    set_word(idx, (words_[idx] & ~(wmask << shift)) | ((*op->write & wmask) << shift));
  }
  return out;
}

void MainArray::watch(int index) {
  if (std::find(watched_.begin(), watched_.end(), index) == watched_.end()) watched_.push_back(index);
}

void MainArray::clear_watch() { watched_.clear(); }

void MainArray::observe_write(int index) {
  if (detect_stale_ && std::find(watched_.begin(), watched_.end(), index) != watched_.end())
    stale_.push_back({cycle_, index});
}

// Hex text: one word per line, 10 hex digits, word 0 first. Blank lines and
// lines starting with '#' are skipped. Binary: 5 bytes per word, little endian.
void MainArray::load_image(std::istream& in, ImageFormat f) {
  std::array<std::uint64_t, kMainWords> w{};
  if (f == ImageFormat::HexText) {
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (n >= kMainWords) throw std::runtime_error("tile image has more than 512 words");
      std::size_t pos = 0;
      const std::uint64_t v = std::stoull(line, &pos, 16);
      if (v > kWordMask) throw std::runtime_error("tile image word wider than 40 bits at line " + std::to_string(n));
      w[n++] = v;
    }
    if (n != kMainWords) throw std::runtime_error("tile image has " + std::to_string(n) + " words, expected 512");
  } else {
    for (int i = 0; i < kMainWords; ++i) {
      unsigned char b[5];
      if (!in.read(reinterpret_cast<char*>(b), 5)) throw std::runtime_error("binary tile image truncated");
      std::uint64_t v = 0;
      for (int k = 4; k >= 0; --k) v = (v << 8) | b[k];
      w[i] = v;
    }
  }
  for (int i = 0; i < kMainWords; ++i) set_word(i, w[i]);
}

void MainArray::save_image(std::ostream& out, ImageFormat f) const {
  for (std::uint64_t v : words_) {
    if (f == ImageFormat::HexText) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%010llx\n", static_cast<unsigned long long>(v));
      out << buf;
    } else {
      for (int k = 0; k < 5; ++k) out.put(static_cast<char>((v >> (8 * k)) & 0xff));
    }
  }
}

}  // namespace bramac
