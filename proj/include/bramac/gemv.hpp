// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bramac/bitmath.hpp"
#include "bramac/instruction.hpp"

namespace bramac {

struct GemvWorkload {
  int m = 1;  // output rows
  int n = 1;  // reduction length
  Precision prec = Precision::Int8;
  bool signed_inputs = true;
  bool persistent = true;
  int batch = 1;  // input vectors sharing the same matrix
};

struct GemvBreakdown {
  std::uint64_t compute = 0;
  std::uint64_t readout = 0;
  std::uint64_t load_exposed = 0;
  std::uint64_t instruction = 0;  // prologue cycles before compute starts
  std::uint64_t total() const { return compute + readout + load_exposed + instruction; }
};

struct GemvReport {
  std::uint64_t total_cycles = 0;
  GemvBreakdown breakdown;
  double lane_efficiency = 1.0;
};

// Segments of the reduction axis between accumulator readouts.
std::vector<int> gemv_segments(int n, Precision p);

// BRAMAC on one block. Each group of L output rows is processed segment by
// segment; each segment is one dot-product program: prologue, ceil(s/2)
// MAC2s, then readout. Batches of input vectors are shared between the two
// 2SA arrays. Non-persistent weights: group 0's tile (n words) is loaded
// before compute, and the tile of group g+1 is written through the ports the
// eFSM leaves free while group g computes; only the remainder is exposed.
GemvReport cycles_bramac(const GemvWorkload& w, Variant v);

struct BitSerialParams {
  int columns = 160;
  // per-level cost = p_factor*p + ceil(log2 pack) + extra
  int reduction_p_factor = 1;
  int reduction_extra = 2;
  bool charge_readout = true;  // serial readout of the (2p + log2 n)-bit sums
};

// CCB (transposed input copy) and CoMeFa (streamed input) share the same
// column-parallel bit-serial model; CoMeFa skips the copy.
GemvReport cycles_bitserial(const GemvWorkload& w, int pack, bool input_copy, const BitSerialParams& bp = {});
GemvReport cycles_ccb(const GemvWorkload& w, int pack, const BitSerialParams& bp = {});
GemvReport cycles_comefa(const GemvWorkload& w, int pack = 4, const BitSerialParams& bp = {});

int bitserial_latency(Precision p);  // single-MAC latency 16/42/113
int effective_pack(int n, int pack, int columns = 160);

struct GemvBaseline {
  std::string name;
  int pack;
  bool input_copy;
};

std::vector<GemvBaseline> gemv_baselines();  // CCB-Pack-2/4, CoMeFa-Pack-2/4

struct SpeedupCell {
  int m, n;
  Precision prec;
  bool persistent;
  std::uint64_t bramac_cycles;
  std::vector<std::uint64_t> baseline_cycles;  // same order as gemv_baselines()
  double speedup_best;                          // vs the fastest baseline
};

struct GridSpec {
  std::vector<int> ms{64, 96, 128, 160};
  std::vector<int> ns{128, 256, 384, 480};
};

std::vector<SpeedupCell> speedup_grid(const GridSpec& g, Variant v = Variant::OneDA, const BitSerialParams& bp = {});

// ---- functional path ----

struct GemvSimResult {
  std::vector<std::vector<std::int64_t>> outputs;  // per batch vector, m values
  std::uint64_t total_cycles = 0;
  GemvBreakdown breakdown;
};

// Drives a BramacBlock through the same schedule cycles_bramac assumes,
// including tile loads through free ports. matrix is m x n row-major;
// requires ceil(m/L) <= 4 and n <= 64.
GemvSimResult simulate_gemv(const GemvWorkload& w, Variant v, const std::vector<std::int64_t>& matrix,
                            const std::vector<std::vector<std::int64_t>>& vectors);

}  // namespace bramac
