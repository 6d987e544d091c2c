// SPDX-License-Identifier: Apache-2.0
#include "bramac/arch_models.hpp"

#include <cmath>
#include <stdexcept>

namespace bramac {

ArchTable default_arch_table() {
  // name, kind, macs, latency, absolute fmax, divisor, overhead block/core
  return {
      {"DSP", BlockKind::DSP, {8, 4, 2}, {1, 1, 1}, 0, 1.0, 0.0, 0.0},
      {"eDSP", BlockKind::DSP, {8, 8, 4}, {1, 1, 1}, 0, 1.0, 0.12, 0.011},
      {"PIR-DSP", BlockKind::DSP, {24, 12, 6}, {1, 1, 1}, 0, 1.3, 0.28, 0.027},
      {"BRAM", BlockKind::BRAM, {0, 0, 0}, {1, 1, 1}, 0, 1.0, 0.0, 0.0},
      {"CCB", BlockKind::BRAM, {160, 160, 160}, {16, 42, 113}, 0, 1.6, 0.168, 0.034},
      {"CoMeFa-D", BlockKind::BRAM, {160, 160, 160}, {16, 42, 113}, 0, 1.25, 0.254, 0.051},
      {"CoMeFa-A", BlockKind::BRAM, {160, 160, 160}, {16, 42, 113}, 0, 2.5, 0.081, 0.016},
      {"BRAMAC-2SA", BlockKind::BRAM, {80, 40, 20}, {5, 7, 11}, 586, 1.0, 0.338, 0.068},
      {"BRAMAC-1DA", BlockKind::BRAM, {40, 20, 10}, {3, 4, 6}, 500, 1.0, 0.169, 0.034},
  };
}

DeviceSpec default_device() {
  DeviceSpec d;
  d.name = "arria10gx900";
  d.lb_count = 33920;
  d.dsp_count = 1518;
  d.bram_count = 2480;
  d.area_lb = 0.704;
  d.area_dsp = 0.095;
  d.area_bram = 0.201;
  d.dsp_fmax_mhz = 549;
  d.bram_fmax_mhz = 645;
  d.lb_fmax_mhz = 500;
  d.lbs_per_mac = {2.1123, 5.68, 13.298};
  return d;
}

const ArchSpec& find_arch(const ArchTable& t, const std::string& name) {
  for (const auto& a : t)
    if (a.name == name) return a;
  throw std::invalid_argument("unknown architecture: " + name);
}

double frequency_mhz(const ArchSpec& a, const DeviceSpec& d) {
  if (a.fmax_mhz > 0) return a.fmax_mhz;
  switch (a.kind) {
    case BlockKind::DSP: return d.dsp_fmax_mhz / a.fmax_divisor;
    case BlockKind::BRAM: return d.bram_fmax_mhz / a.fmax_divisor;
    case BlockKind::LB: return d.lb_fmax_mhz / a.fmax_divisor;
  }
  return 0;
}

double block_rate(const ArchSpec& a, const DeviceSpec& d, Precision p) {
  const int i = prec_index(p);
  return a.macs[i] * frequency_mhz(a, d) * 1e6 / a.latency[i];
}

double lb_rate(const DeviceSpec& d, Precision p) {
  return d.lb_count / d.lbs_per_mac[prec_index(p)] * d.lb_fmax_mhz * 1e6;
}

std::string FpgaConfig::label() const {
  if (dsp_arch == "DSP" && bram_arch == "BRAM") return "Baseline";
  if (bram_arch == "BRAM") return dsp_arch;
  if (dsp_arch == "DSP") return bram_arch;
  return dsp_arch + "+" + bram_arch;
}

Throughput peak_throughput(const DeviceSpec& d, const ArchTable& t, const FpgaConfig& cfg, Precision p) {
  const ArchSpec& dsp = find_arch(t, cfg.dsp_arch);
  const ArchSpec& bram = find_arch(t, cfg.bram_arch);
  if (dsp.kind != BlockKind::DSP) throw std::invalid_argument(cfg.dsp_arch + " is not a DSP architecture");
  if (bram.kind != BlockKind::BRAM) throw std::invalid_argument(cfg.bram_arch + " is not a BRAM architecture");
  Throughput r;
  r.lb = lb_rate(d, p);
  r.dsp = d.dsp_count * block_rate(dsp, d, p);
  r.bram = d.bram_count * block_rate(bram, d, p);
  return r;
}

std::vector<FpgaConfig> figure_configs() {
  return {{"DSP", "BRAM"},     {"eDSP", "BRAM"},     {"PIR-DSP", "BRAM"},   {"DSP", "CCB"},
          {"DSP", "CoMeFa-D"}, {"DSP", "CoMeFa-A"}, {"DSP", "BRAMAC-2SA"}, {"DSP", "BRAMAC-1DA"}};
}

int next_supported_bits(int p) {
  if (p < 2 || p > 8) throw std::out_of_range("weight precision must be in [2, 8]");
  return p <= 2 ? 2 : p <= 4 ? 4 : 8;
}

double bramac_utilization(int p) { return static_cast<double>(p) / next_supported_bits(p); }

RowUsage bitserial_utilization(const RowBudget& b, int p) {
  if (p < 2 || p > 8) throw std::out_of_range("weight precision must be in [2, 8]");
  const int log2k = static_cast<int>(std::ceil(std::log2(static_cast<double>(b.pack))));
  const int overhead = (b.input_copy ? b.pack * p : 0) + (2 * p + log2k) + 2 * p;
  const int weights = (kMainRows - overhead) / p;
  return {weights * p, overhead, static_cast<double>(weights * p) / kMainRows};
}

std::vector<RowBudget> baseline_budgets() {
  return {{"CCB-Pack-2", 2, true}, {"CCB-Pack-4", 4, true}, {"CoMeFa", 4, false}};
}

}  // namespace bramac
