// SPDX-License-Identifier: Apache-2.0
#include "bramac/gemv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bramac/efsm.hpp"

namespace bramac {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

int ceil_log2(std::uint64_t x) {
  int r = 0;
  while ((std::uint64_t{1} << r) < x) ++r;
  return r;
}

void check_workload(const GemvWorkload& w) {
  if (w.m < 1 || w.n < 1) throw std::invalid_argument("GEMV dimensions must be positive");
  if (w.batch < 1) throw std::invalid_argument("GEMV batch must be positive");
}

}  // namespace

std::vector<int> gemv_segments(int n, Precision p) {
  std::vector<int> s;
  const int d = info(p).max_dot;
  for (int r = n; r > 0; r -= d) s.push_back(std::min(r, d));
  return s;
}

GemvReport cycles_bramac(const GemvWorkload& w, Variant v) {
  check_workload(w);
  const PrecisionInfo pi = info(w.prec);
  const VariantInfo vi = info(v);
  const std::uint64_t lat = mac2_latency(v, w.prec, w.signed_inputs);
  const std::uint64_t groups = ceil_div(w.m, pi.lanes);
  const std::uint64_t passes = ceil_div(w.batch, vi.dummy_arrays);

  GemvBreakdown g;  // one group
  std::uint64_t busy = 0;
  for (int s : gemv_segments(w.n, w.prec)) {
    const std::uint64_t pairs = ceil_div(s, 2);
    g.instruction += vi.prologue_cycles;
    g.compute += pairs * lat;
    g.readout += vi.readout_cycles;
    busy += pairs * vi.port_busy_per_mac2 + vi.readout_cycles;
  }
  g.instruction *= passes;
  g.compute *= passes;
  g.readout *= passes;
  busy *= passes;

  GemvReport r;
  r.breakdown.instruction = groups * g.instruction;
  r.breakdown.compute = groups * g.compute;
  r.breakdown.readout = groups * g.readout;
  if (!w.persistent) {
    const std::uint64_t words = w.n;  // per group tile, one word per column
    const std::uint64_t free = g.total() - busy;
    r.breakdown.load_exposed = words + (groups - 1) * (words > free ? words - free : 0);
  }
  r.total_cycles = r.breakdown.total();
  r.lane_efficiency = static_cast<double>(w.m) / static_cast<double>(groups * pi.lanes);
  return r;
}

int bitserial_latency(Precision p) {
  switch (p) {
    case Precision::Int2: return 16;
    case Precision::Int4: return 42;
    case Precision::Int8: return 113;
  }
  return 0;
}

int effective_pack(int n, int pack, int columns) {
  return std::max(1, std::min(pack, static_cast<int>(ceil_div(n, columns))));
}

GemvReport cycles_bitserial(const GemvWorkload& w, int pack, bool input_copy, const BitSerialParams& bp) {
  check_workload(w);
  if (pack < 1) throw std::invalid_argument("pack factor must be positive");
  const int p = bits(w.prec);
  const std::uint64_t C = bp.columns;
  const std::uint64_t kp = effective_pack(w.n, pack, bp.columns);
  const std::uint64_t passes = ceil_div(w.n, C * kp);
  const std::uint64_t cols = std::min<std::uint64_t>(C, ceil_div(w.n, kp));
  const std::uint64_t par = std::max<std::uint64_t>(1, C / cols);
  const std::uint64_t levels = ceil_log2(cols);
  const std::uint64_t red = levels * (bp.reduction_p_factor * p + ceil_log2(kp) + bp.reduction_extra);
  const std::uint64_t rounds = ceil_div(w.m, par);
  const std::uint64_t acc_bits = 2 * p + ceil_log2(w.n);

  GemvReport r;
  r.breakdown.compute = w.batch * rounds * passes * (kp * bitserial_latency(w.prec) + red);
  r.breakdown.instruction = input_copy ? w.batch * passes * kp * p * (C / kWordBits) : 0;
  if (bp.charge_readout) r.breakdown.readout = w.batch * ceil_div(w.m, kWordBits) * acc_bits;
  if (!w.persistent) r.breakdown.load_exposed = ceil_div(static_cast<std::uint64_t>(w.m) * w.n * p, kWordBits);
  r.total_cycles = r.breakdown.total();
  r.lane_efficiency = static_cast<double>(w.m) / static_cast<double>(rounds * par);
  return r;
}

GemvReport cycles_ccb(const GemvWorkload& w, int pack, const BitSerialParams& bp) {
  return cycles_bitserial(w, pack, true, bp);
}

GemvReport cycles_comefa(const GemvWorkload& w, int pack, const BitSerialParams& bp) {
  return cycles_bitserial(w, pack, false, bp);
}

std::vector<GemvBaseline> gemv_baselines() {
  return {{"CCB-Pack-2", 2, true}, {"CCB-Pack-4", 4, true}, {"CoMeFa-Pack-2", 2, false}, {"CoMeFa-Pack-4", 4, false}};
}

std::vector<SpeedupCell> speedup_grid(const GridSpec& g, Variant v, const BitSerialParams& bp) {
  std::vector<SpeedupCell> out;
  const auto bases = gemv_baselines();
  for (bool persistent : {true, false})
    for (Precision p : {Precision::Int2, Precision::Int4, Precision::Int8})
      for (int n : g.ns)
        for (int m : g.ms) {
          GemvWorkload w{m, n, p, false, persistent, 1};
          SpeedupCell c{m, n, p, persistent, cycles_bramac(w, v).total_cycles, {}, 0};
          std::uint64_t best = UINT64_MAX;
          for (const auto& b : bases) {
            const std::uint64_t t = cycles_bitserial(w, b.pack, b.input_copy, bp).total_cycles;
            c.baseline_cycles.push_back(t);
            best = std::min(best, t);
          }
          c.speedup_best = static_cast<double>(best) / static_cast<double>(c.bramac_cycles);
          out.push_back(c);
        }
  return out;
}

// ---- functional path ----

GemvSimResult simulate_gemv(const GemvWorkload& w, Variant v, const std::vector<std::int64_t>& matrix,
                            const std::vector<std::vector<std::int64_t>>& vectors) {
  check_workload(w);
  const PrecisionInfo pi = info(w.prec);
  const VariantInfo vi = info(v);
  const int L = pi.lanes;
  const int groups = static_cast<int>(ceil_div(w.m, L));
  if (groups > 4 || w.n > 64) throw std::invalid_argument("simulated GEMV is limited to 4 groups and n <= 64");
  if (static_cast<int>(matrix.size()) != w.m * w.n) throw std::invalid_argument("matrix size mismatch");
  if (static_cast<int>(vectors.size()) != w.batch) throw std::invalid_argument("vector count must equal batch");
  const int n = bits(w.prec);
  for (const auto& x : vectors) {
    if (static_cast<int>(x.size()) != w.n) throw std::invalid_argument("vector length mismatch");
    for (std::int64_t e : x)
      if (!fits(e, n, w.signed_inputs)) throw std::out_of_range("GEMV input out of range");
  }

  struct Load {
    int word;
    std::uint64_t value;
  };
  // Persistent tiles each get their own region; streamed tiles double-buffer.
  auto tile_base = [&](int g) { return w.persistent ? g * 128 : (g % 2) * 256; };
  auto tile = [&](int g) {
    std::vector<Load> t;
    const int base = tile_base(g);
    for (int j = 0; j < w.n; ++j) {
      PackedWord pw;
      for (int i = 0; i < L && g * L + i < w.m; ++i)
        pw.set_element(i, w.prec, matrix[static_cast<std::size_t>(g * L + i) * w.n + j]);
      const auto [a1, a2] = pair_addresses(base, j / 2);
      t.push_back({(j % 2 ? a2 : a1).word_index(), pw.bits});
    }
    return t;
  };

  BramacBlock block(v, w.prec);
  block.set_tracing(false);
  GemvSimResult res;
  res.outputs.assign(w.batch, std::vector<std::int64_t>(w.m, 0));

  auto raw = [&](int vec, int j) -> std::uint32_t {
    if (vec >= w.batch || j >= w.n) return 0;
    return static_cast<std::uint32_t>(to_raw(vectors[vec][j], n));
  };

  std::uint64_t exposed = 0;
  if (w.persistent) {
    for (int g = 0; g < groups; ++g)
      for (const Load& l : tile(g)) block.memory().set_word(l.word, l.value);
  } else {
    for (const Load& l : tile(0)) {
      block.tick({std::nullopt, PortOp{static_cast<std::uint32_t>(l.word), l.value}, std::nullopt});
      ++exposed;
    }
  }

  const int passes = static_cast<int>(ceil_div(w.batch, vi.dummy_arrays));
  for (int g = 0; g < groups; ++g) {
    const int base = tile_base(g);
    std::vector<CimInstruction> prog;
    std::vector<std::pair<int, int>> readout_owner;  // (pass, array) per 4 chunks
    for (int pass = 0; pass < passes; ++pass) {
      int j0 = 0;
      for (int s : gemv_segments(w.n, w.prec)) {
        std::vector<Mac2Request> reqs;
        for (int q = j0 / 2; q < (j0 + s + 1) / 2; ++q) {
          auto [a1, a2] = pair_addresses(base, q);
          Mac2Request r{a1, a2};
          r.in0 = {raw(pass * vi.dummy_arrays, 2 * q), raw(pass * vi.dummy_arrays, 2 * q + 1)};
          if (vi.dummy_arrays == 2) r.in1 = {raw(pass * 2 + 1, 2 * q), raw(pass * 2 + 1, 2 * q + 1)};
          reqs.push_back(r);
        }
        auto ins = mac2_instructions(v, reqs, w.prec, w.signed_inputs, true);
        auto ro = readout_instructions(v, w.prec);
        prog.insert(prog.end(), ins.begin(), ins.end());
        prog.insert(prog.end(), ro.begin(), ro.end());
        for (int a = 0; a < vi.dummy_arrays; ++a) readout_owner.push_back({pass, a});
        j0 += s;
      }
    }

    std::vector<Load> next = g + 1 < groups && !w.persistent ? tile(g + 1) : std::vector<Load>{};
    std::size_t li = 0, pi_ = 0;
    std::vector<PackedWord> chunks;
    while (pi_ < prog.size() || !block.idle()) {
      CycleInput in;
      if (pi_ < prog.size() && block.can_issue(prog[pi_]))
        in.instruction = prog[pi_++];
      else if (li < next.size()) {
        in.port_a = PortOp{static_cast<std::uint32_t>(next[li].word), next[li].value};
        ++li;
      }
      const CycleOutput o = block.tick(in);
      if (o.acc_chunk) chunks.push_back(*o.acc_chunk);
    }
    for (; li < next.size(); ++li) {
      block.tick({std::nullopt, PortOp{static_cast<std::uint32_t>(next[li].word), next[li].value}, std::nullopt});
      ++exposed;
    }

    const auto accs = accumulators_from_chunks(chunks, w.prec);
    for (std::size_t k = 0; k < accs.size(); ++k) {
      const auto [pass, arr] = readout_owner[k];
      const int vec = pass * vi.dummy_arrays + arr;
      if (vec >= w.batch) continue;
      for (int i = 0; i < L && g * L + i < w.m; ++i) res.outputs[vec][g * L + i] += accs[k].lane(i);
    }
  }
  res.total_cycles = block.cycle();
  res.breakdown.load_exposed = exposed;
  return res;
}

}  // namespace bramac
