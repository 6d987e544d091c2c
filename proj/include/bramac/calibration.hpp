// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "bramac/arch_models.hpp"
#include "bramac/instruction.hpp"

namespace bramac {

struct AreaRatioTarget {
  std::string network;
  Variant variant;
  double target;  // mean over precisions of DSP-plus-BRAM area vs plain DLA
};

std::vector<AreaRatioTarget> default_area_targets();

// Mean over 2/4/8-bit of the reference configurations' area ratio, computed
// from their DSP and BRAM counts with the device's per-block areas.
double reference_area_ratio(const DeviceSpec& d, const ArchTable& t, const std::string& network, Variant v);

struct BramFit {
  int bram_count = 0;
  double sse = 0;
  std::vector<double> ratios;  // same order as the targets
};

// Scans bram_count in [lo, hi] for the least squared error against targets.
BramFit fit_bram_count(DeviceSpec d, const ArchTable& t, const std::vector<AreaRatioTarget>& targets, int lo = 500,
                       int hi = 20000);

struct BoostTarget {
  std::string bram_arch;
  std::array<double, 3> boost;  // at 2/4/8-bit
};

std::vector<BoostTarget> default_boost_targets();

struct LbFit {
  std::array<double, 3> lb_rate{};      // MAC/s from all LBs
  std::array<double, 3> lbs_per_mac{};  // at the device's LB fmax
  std::vector<std::array<double, 3>> boosts;  // achieved, per target
};

// With bram_count fixed, chooses the LB throughput per precision minimizing
// the squared boost error over the targets (closed form in 1/(LB + DSP)).
LbFit fit_lb(const DeviceSpec& d, const ArchTable& t, const std::vector<BoostTarget>& targets);

double boost(const DeviceSpec& d, const ArchTable& t, const std::string& bram_arch, Precision p);

}  // namespace bramac
