// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "bramac/bitmath.hpp"
#include "bramac/bram_block.hpp"

namespace bramac {

enum class BlockKind { LB, DSP, BRAM };

constexpr int prec_index(Precision p) { return static_cast<int>(p); }

struct ArchSpec {
  std::string name;
  BlockKind kind = BlockKind::BRAM;
  std::array<int, 3> macs{};     // parallel MACs per block at 2/4/8-bit
  std::array<int, 3> latency{};  // cycles per batch at 2/4/8-bit
  // Frequency is either absolute or the device's base frequency for the
  // block kind divided by fmax_divisor.
  double fmax_mhz = 0.0;
  double fmax_divisor = 1.0;
  double block_overhead = 0.0;
  double core_overhead = 0.0;
};

struct DeviceSpec {
  std::string name;
  int lb_count = 0;
  int dsp_count = 0;
  int bram_count = 0;
  double area_lb = 0, area_dsp = 0, area_bram = 0;  // fractions of core area
  double dsp_fmax_mhz = 0;
  double bram_fmax_mhz = 0;
  double lb_fmax_mhz = 0;
  std::array<double, 3> lbs_per_mac{};  // LBs consumed by one MAC unit at 2/4/8-bit
};

using ArchTable = std::vector<ArchSpec>;

ArchTable default_arch_table();
DeviceSpec default_device();
const ArchSpec& find_arch(const ArchTable& t, const std::string& name);

double frequency_mhz(const ArchSpec& a, const DeviceSpec& d);
// MACs per second delivered by one block.
double block_rate(const ArchSpec& a, const DeviceSpec& d, Precision p);
double lb_rate(const DeviceSpec& d, Precision p);

struct FpgaConfig {
  std::string dsp_arch = "DSP";
  std::string bram_arch = "BRAM";
  std::string label() const;
};

struct Throughput {
  double lb = 0, dsp = 0, bram = 0;  // MAC/s
  double total() const { return lb + dsp + bram; }
};

Throughput peak_throughput(const DeviceSpec& d, const ArchTable& t, const FpgaConfig& cfg, Precision p);

// The configurations compared against the conventional FPGA.
std::vector<FpgaConfig> figure_configs();

// ---- storage efficiency ----

int next_supported_bits(int p);  // 2, 4 or 8; p in [2, 8]
double bramac_utilization(int p);

struct RowBudget {
  std::string name;
  int pack = 1;
  bool input_copy = true;  // false for streamed-input designs
};

struct RowUsage {
  int weight_rows;
  int overhead_rows;  // input copy + accumulator + product
  double efficiency;
};

// Bit-serial layouts store transposed operands in the 128 rows of a column:
// as many p-row weights as fit after reserving pack*p input-copy rows,
// 2p + ceil(log2 pack) accumulator rows and 2p product rows.
RowUsage bitserial_utilization(const RowBudget& b, int p);

std::vector<RowBudget> baseline_budgets();  // CCB-Pack-2, CCB-Pack-4, CoMeFa

}  // namespace bramac
