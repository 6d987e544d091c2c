// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bramac/arch_models.hpp"
#include "bramac/bitmath.hpp"
#include "bramac/instruction.hpp"

namespace bramac {

struct ConvLayer {
  std::string name;
  int H = 1, W = 1, C = 1;
  int K = 1, R = 1, S = 1;
  int stride = 1, pad = 0;

  int Hout() const { return (H + 2 * pad - R) / stride + 1; }
  int Wout() const { return (W + 2 * pad - S) / stride + 1; }
  std::uint64_t macs() const;
};

struct Network {
  std::string name;
  std::vector<ConvLayer> layers;
};

struct AccelConfig {
  int q1 = 1;  // output columns on DSPs
  int q2 = 0;  // output columns on BRAMAC
  int c = 1;
  int k = 1;
  Precision prec = Precision::Int8;
  std::optional<Variant> variant;

  std::string str() const;  // "(q1+q2, c, k)" or "(q, c, k)"
  // Accepts "q1+q2,c,k" or "q,c,k"; whitespace and parentheses ignored.
  static AccelConfig parse(const std::string& s, Precision p, std::optional<Variant> v);
  friend bool operator==(const AccelConfig&, const AccelConfig&) = default;
};

int dsp_pack(Precision p);  // multiplications per DSP: 4/2/1
int dsp_count(const AccelConfig& cfg);
int bramac_block_count(const AccelConfig& cfg);
// Stream buffer (banked, holds the largest layer's input plus output) and
// filter cache (k*c weights wide, double-buffered filter depth).
int stream_buffer_brams(const Network& net, const AccelConfig& cfg);
int filter_cache_brams(const Network& net, const AccelConfig& cfg);

struct LayerCycles {
  std::uint64_t dsp = 0;
  std::uint64_t bramac = 0;
  std::uint64_t total() const { return dsp > bramac ? dsp : bramac; }
};

LayerCycles layer_cycles(const ConvLayer& l, const AccelConfig& cfg);
std::uint64_t network_cycles(const Network& net, const AccelConfig& cfg);

struct AreaReport {
  int dsps = 0;
  int buffer_brams = 0;
  int compute_brams = 0;
  int brams() const { return buffer_brams + compute_brams; }
  double normalized_area = 0;
};

enum class ClockPolicy { MinOfDspAndBramac, DspClock };

struct DlaContext {
  DeviceSpec device;
  double overhead_2sa = 0.338;
  double overhead_1da = 0.169;
  double fmax_2sa = 586;
  double fmax_1da = 500;
  ClockPolicy clock = ClockPolicy::MinOfDspAndBramac;

  static DlaContext from(const DeviceSpec& d, const ArchTable& t, ClockPolicy c = ClockPolicy::MinOfDspAndBramac);
  double overhead(std::optional<Variant> v) const;
  double clock_mhz(std::optional<Variant> v) const;
};

// On a BRAMAC device every BRAM carries the block overhead, so all BRAMs used
// by an augmented design are charged at (1 + overhead).
double area_normalized(const AreaReport& a, const DlaContext& ctx, std::optional<Variant> v);
AreaReport area_report(const Network& net, const AccelConfig& cfg, const DlaContext& ctx);

struct Evaluation {
  AccelConfig cfg;
  AreaReport area;
  std::uint64_t cycles = 0;
  double perf = 0;  // network inferences per second
  double objective = 0;
  bool feasible = false;
};

Evaluation evaluate(const Network& net, const AccelConfig& cfg, const DlaContext& ctx);

struct Range {
  int lo, hi, step = 1;
};

struct DseBounds {
  Range q1{1, 8};
  Range q2{1, 2};
  Range c{1, 32};
  Range k{1, 160};
};

struct DseResult {
  Evaluation best;
  std::size_t points = 0;
  std::size_t feasible = 0;
  std::vector<Evaluation> grid;  // filled when requested
};

// Exhaustive search maximizing perf^2/area. Ties keep the lexicographically
// smallest (q1, q2, c, k). Throws std::runtime_error when nothing is feasible.
DseResult dse(const Network& net, std::optional<Variant> v, Precision p, const DlaContext& ctx,
              const DseBounds& b = {}, int threads = 0, bool keep_grid = false);

// ---- reference configurations ----

struct ReferenceRow {
  std::string network;
  Precision prec;
  std::optional<Variant> variant;
  AccelConfig cfg;
  int dsps;
  int brams;
};

std::vector<ReferenceRow> reference_table();

}  // namespace bramac
