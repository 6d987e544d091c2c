// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "bramac/bitmath.hpp"

namespace bramac {

enum class BramMode : std::uint8_t { Mem, Cim };

constexpr std::uint32_t kCimTriggerAddress = 0xfff;
constexpr int kMainRows = 128;
constexpr int kMainCols = 160;
constexpr int kMainWords = 512;
constexpr int kMainBits = kMainRows * kMainCols;

struct CimAddress {
  int row = 0;  // bramRow, 7 bits
  int col = 0;  // bramCol, 2 bits

  int word_index() const { return row * 4 + col; }
  static CimAddress from_index(int index);
  friend bool operator==(CimAddress, CimAddress) = default;
};

// True iff the port-A address is the reserved CIM trigger. Only meaningful
// in CIM mode; callers in MEM mode treat 0xfff as an ordinary address.
bool is_cim_trigger(std::uint32_t port_a_addr);

enum class AspectRatio : std::uint8_t { W512x40, W1024x20 };

struct PortOp {
  std::uint32_t addr = 0;
  std::optional<std::uint64_t> write;  // empty means read
};

struct PortResult {
  std::optional<std::uint64_t> read;
};

enum class ImageFormat : std::uint8_t { HexText, Binary };

struct StaleWrite {
  std::uint64_t cycle;
  int word;
};

class MainArray {
 public:
  MainArray() = default;

  BramMode mode() const { return mode_; }
  void set_mode(BramMode m) { mode_ = m; }

  PackedWord read40(CimAddress a) const;
  void write40(CimAddress a, PackedWord w);
  std::uint64_t word(int index) const;
  void set_word(int index, std::uint64_t v);

  // One cycle of dual-port access. Reads see the pre-cycle contents; two
  // writes to the same word throw.
  std::array<PortResult, 2> access(const std::optional<PortOp>& a, const std::optional<PortOp>& b,
                                   AspectRatio ar = AspectRatio::W512x40);

  // Stale-read detector: words copied by an in-flight MAC2 are watched and
  // any write to them is recorded with the supplied cycle number.
  void set_stale_detection(bool on) { detect_stale_ = on; }
  void watch(int index);
  void clear_watch();
  void note_cycle(std::uint64_t c) { cycle_ = c; }
  const std::vector<StaleWrite>& stale_writes() const { return stale_; }

  void load_image(std::istream& in, ImageFormat f);
  void save_image(std::ostream& out, ImageFormat f) const;

 private:
  void observe_write(int index);

  std::array<std::uint64_t, kMainWords> words_{};
  BramMode mode_ = BramMode::Cim;
  bool detect_stale_ = false;
  std::vector<int> watched_;
  std::vector<StaleWrite> stale_;
  std::uint64_t cycle_ = 0;
};

}  // namespace bramac
