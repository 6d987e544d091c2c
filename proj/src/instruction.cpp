// SPDX-License-Identifier: Apache-2.0
#include "bramac/instruction.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace bramac {

std::string to_string(Variant v) { return v == Variant::TwoSA ? "2SA" : "1DA"; }

Variant parse_variant(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "2sa" || t == "bramac-2sa") return Variant::TwoSA;
  if (t == "1da" || t == "bramac-1da") return Variant::OneDA;
  throw std::invalid_argument("unknown variant: " + s);
}

int mac2_ticks(Precision p, bool signed_inputs) {
  // SumInit, [Invert], MSB add-shift, n-2 add-shifts, last add, accumulate
  const int n = bits(p);
  return n + 2 + (signed_inputs ? 1 : 0);
}

int mac2_latency(Variant v, Precision p, bool signed_inputs) {
  const int t = mac2_ticks(p, signed_inputs);
  if (v == Variant::TwoSA) return t;
  return (t + 1 + 1) / 2;  // copy tick plus program, two ticks per cycle
}

namespace {

struct Field {
  int width;
  std::uint64_t value;
  const char* name;
};

std::uint64_t prec_code(Precision p) { return static_cast<std::uint64_t>(p); }

std::vector<Field> fields(const CimInstruction& x, Variant v) {
  std::vector<Field> f{{2, prec_code(x.prec), "prec"},   {1, x.unsigned_inputs, "inType"},
                       {1, x.reset, "reset"},            {1, x.start, "start"},
                       {1, x.copy, "copy"}};
  if (v == Variant::TwoSA) {
    f.push_back({1, x.w2, "w1_w2"});
    f.push_back({1, x.done, "done"});
    f.push_back({7, static_cast<std::uint64_t>(x.row), "bramRow"});
    f.push_back({2, static_cast<std::uint64_t>(x.col), "bramCol"});
    f.push_back({8, x.input_a, "I_a"});
    f.push_back({8, x.input_b, "I_b"});
    f.push_back({7, 0, "reserved"});
  } else {
    f.push_back({1, x.done, "done"});
    f.push_back({7, static_cast<std::uint64_t>(x.row), "bramRow1"});
    f.push_back({7, static_cast<std::uint64_t>(x.row2), "bramRow2"});
    f.push_back({2, static_cast<std::uint64_t>(x.col), "bramCol"});
    f.push_back({8, x.input_a, "I1"});
    f.push_back({8, x.input_b, "I2"});
    f.push_back({1, 0, "reserved"});
  }
  return f;
}

}  // namespace

std::uint64_t encode(const CimInstruction& x, Variant v) {
  if (x.row < 0 || x.row2 < 0 || x.col < 0) throw std::out_of_range("negative instruction field");
  if (v == Variant::TwoSA && x.row2 != 0) throw std::invalid_argument("2SA instruction has no bramRow2");
  if (v == Variant::OneDA && x.w2) throw std::invalid_argument("1DA instruction has no w1_w2 flag");
  const std::uint32_t in_mask = (1u << bits(x.prec)) - 1;
  if ((x.input_a & ~in_mask) || (x.input_b & ~in_mask))
    throw std::out_of_range("instruction input wider than " + to_string(x.prec));
  std::uint64_t w = 0;
  int used = 0;
  for (const Field& f : fields(x, v)) {
    if (f.value >> f.width) throw std::out_of_range(std::string("instruction field overflow: ") + f.name);
    w = (w << f.width) | f.value;
    used += f.width;
  }
  if (used != kWordBits) throw std::logic_error("instruction layout is not 40 bits");
  return w;
}

CimInstruction decode(std::uint64_t word, Variant v) {
  if (word > kWordMask) throw std::out_of_range("instruction wider than 40 bits");
  int pos = kWordBits;
  auto take = [&](int width) {
    pos -= width;
    return (word >> pos) & ((std::uint64_t{1} << width) - 1);
  };
  CimInstruction x;
  const auto pc = take(2);
  if (pc > 2) throw std::invalid_argument("instruction precision code 3 is undefined");
  x.prec = static_cast<Precision>(pc);
  x.unsigned_inputs = take(1);
  x.reset = take(1);
  x.start = take(1);
  x.copy = take(1);
  if (v == Variant::TwoSA) {
    x.w2 = take(1);
    x.done = take(1);
    x.row = static_cast<int>(take(7));
    x.col = static_cast<int>(take(2));
    x.input_a = static_cast<std::uint32_t>(take(8));
    x.input_b = static_cast<std::uint32_t>(take(8));
    if (take(7)) throw std::invalid_argument("instruction reserved bits set");
  } else {
    x.done = take(1);
    x.row = static_cast<int>(take(7));
    x.row2 = static_cast<int>(take(7));
    x.col = static_cast<int>(take(2));
    x.input_a = static_cast<std::uint32_t>(take(8));
    x.input_b = static_cast<std::uint32_t>(take(8));
    if (take(1)) throw std::invalid_argument("instruction reserved bits set");
  }
  const std::uint32_t in_mask = (1u << bits(x.prec)) - 1;
  if ((x.input_a & ~in_mask) || (x.input_b & ~in_mask))
    throw std::invalid_argument("instruction input wider than " + to_string(x.prec));
  return x;
}

std::vector<std::uint64_t> read_instruction_hex(std::istream& in) {
  std::vector<std::uint64_t> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
    if (line.empty()) continue;
    if (line.size() > 2 && line[0] == '0' && (line[1] == 'x' || line[1] == 'X')) line = line.substr(2);
    std::size_t pos = 0;
    std::uint64_t v;
    try {
      v = std::stoull(line, &pos, 16);
    } catch (const std::exception&) {
      throw std::runtime_error("bad hex instruction at line " + std::to_string(lineno));
    }
    if (pos != line.size() || v > kWordMask) throw std::runtime_error("bad hex instruction at line " + std::to_string(lineno));
    out.push_back(v);
  }
  return out;
}

void write_instruction_hex(std::ostream& out, const std::vector<std::uint64_t>& words) {
  for (std::uint64_t w : words) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%010llx\n", static_cast<unsigned long long>(w));
    out << buf;
  }
}

}  // namespace bramac
