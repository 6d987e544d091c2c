// SPDX-License-Identifier: Apache-2.0
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "bramac/bram_block.hpp"

using namespace bramac;

TEST_CASE("geometry and trigger") {
  CHECK(kMainBits == 20480);
  CHECK(kMainWords * kWordBits == kMainBits);
  CHECK(is_cim_trigger(0xfff));
  CHECK_FALSE(is_cim_trigger(0x000));
  CHECK_FALSE(is_cim_trigger(0x1ff));
  for (int i = 0; i < kMainWords; ++i) REQUIRE(CimAddress::from_index(i).word_index() == i);
  CHECK(CimAddress{127, 3}.word_index() == 511);
  CHECK_THROWS(CimAddress::from_index(512));
}

TEST_CASE("CIM read/write") {
  MainArray m;
  CHECK(m.read40({5, 2}).bits == 0);
  m.write40({5, 2}, PackedWord{0x12'3456'789aull});
  CHECK(m.read40({5, 2}).bits == 0x12'3456'789aull);
  CHECK(m.word(22) == 0x12'3456'789aull);
  m.write40({0, 0}, PackedWord{0xff'ffff'ffffull});
  auto r = m.access(PortOp{22, std::nullopt}, PortOp{0, std::nullopt});
  CHECK(*r[0].read == 0x12'3456'789aull);
  CHECK(*r[1].read == 0xff'ffff'ffffull);
  CHECK_THROWS(m.read40({128, 0}));
}

TEST_CASE("MEM mode semantics") {
  MainArray m;
  m.set_mode(BramMode::Mem);
  m.access(PortOp{7, 0xabcull}, std::nullopt);
  CHECK(*m.access(PortOp{7, std::nullopt}, std::nullopt)[0].read == 0xabc);
  // read-during-write returns the old value
  auto r = m.access(PortOp{7, 0x111ull}, PortOp{7, std::nullopt});
  CHECK(*r[1].read == 0xabc);
  CHECK(m.word(7) == 0x111);
  CHECK_THROWS(m.access(PortOp{3, 1ull}, PortOp{3, 2ull}));
  m.access(PortOp{3, 1ull}, PortOp{4, 2ull});
  CHECK(m.word(3) == 1);
  CHECK(m.word(4) == 2);
  CHECK_THROWS(m.access(PortOp{512, std::nullopt}, std::nullopt));

  // 1024 x 20 view: two halves of one 40-bit word
  m.access(PortOp{20, 0x12345ull}, PortOp{21, 0xabcdeull}, AspectRatio::W1024x20);
  CHECK(m.word(10) == ((0xabcdeull << 20) | 0x12345ull));
  CHECK(*m.access(PortOp{21, std::nullopt}, std::nullopt, AspectRatio::W1024x20)[0].read == 0xabcde);
  CHECK_THROWS(m.access(PortOp{1024, std::nullopt}, std::nullopt, AspectRatio::W1024x20));
}

TEST_CASE("tile images round trip") {
  MainArray a;
  std::mt19937_64 rng(21);
  for (int i = 0; i < kMainWords; ++i) a.set_word(i, rng() & kWordMask);
  for (ImageFormat f : {ImageFormat::HexText, ImageFormat::Binary}) {
    std::stringstream ss;
    a.save_image(ss, f);
    MainArray b;
    b.load_image(ss, f);
    for (int i = 0; i < kMainWords; ++i) REQUIRE(a.word(i) == b.word(i));
  }
  std::stringstream hex;
  a.save_image(hex, ImageFormat::HexText);
  std::string first;
  std::getline(hex, first);
  CHECK(first.size() == 10);
  std::stringstream short_img("0000000001\n");
  MainArray c;
  CHECK_THROWS(c.load_image(short_img, ImageFormat::HexText));
}

TEST_CASE("stale-write detector") {
  MainArray m;
  m.set_stale_detection(true);
  m.watch(9);
  m.note_cycle(4);
  m.set_word(8, 1);
  CHECK(m.stale_writes().empty());
  m.set_word(9, 1);
  REQUIRE(m.stale_writes().size() == 1);
  CHECK(m.stale_writes()[0].cycle == 4);
  CHECK(m.stale_writes()[0].word == 9);
}
