// SPDX-License-Identifier: Apache-2.0
#include "bramac/calibration.hpp"

#include <limits>
#include <stdexcept>

#include "bramac/dla.hpp"

namespace bramac {

std::vector<AreaRatioTarget> default_area_targets() {
  return {{"alexnet", Variant::TwoSA, 2.01},
          {"alexnet", Variant::OneDA, 1.52},
          {"resnet34", Variant::TwoSA, 1.2},
          {"resnet34", Variant::OneDA, 1.22}};
}

double reference_area_ratio(const DeviceSpec& d, const ArchTable& t, const std::string& network, Variant v) {
  const DlaContext ctx = DlaContext::from(d, t);
  const auto rows = reference_table();
  double sum = 0;
  int n = 0;
  for (Precision p : {Precision::Int2, Precision::Int4, Precision::Int8}) {
    const ReferenceRow* base = nullptr;
    const ReferenceRow* aug = nullptr;
    for (const auto& r : rows) {
      if (r.network != network || r.prec != p) continue;
      if (!r.variant) base = &r;
      if (r.variant && *r.variant == v) aug = &r;
    }
    if (!base || !aug) throw std::invalid_argument("no reference rows for " + network);
    AreaReport a0{base->dsps, base->brams, 0, 0};
    AreaReport a1{aug->dsps, aug->brams, 0, 0};
    sum += area_normalized(a1, ctx, v) / area_normalized(a0, ctx, std::nullopt);
    ++n;
  }
  return sum / n;
}

BramFit fit_bram_count(DeviceSpec d, const ArchTable& t, const std::vector<AreaRatioTarget>& targets, int lo, int hi) {
  BramFit best;
  best.sse = std::numeric_limits<double>::infinity();
  for (int b = lo; b <= hi; ++b) {
    d.bram_count = b;
    double sse = 0;
    std::vector<double> rs;
    for (const auto& x : targets) {
      const double r = reference_area_ratio(d, t, x.network, x.variant);
      rs.push_back(r);
      sse += (r - x.target) * (r - x.target);
    }
    if (sse < best.sse) best = {b, sse, rs};
  }
  return best;
}

std::vector<BoostTarget> default_boost_targets() {
  return {{"BRAMAC-2SA", {2.6, 2.3, 1.9}}, {"BRAMAC-1DA", {2.1, 2.0, 1.7}}};
}

double boost(const DeviceSpec& d, const ArchTable& t, const std::string& bram_arch, Precision p) {
  const double base = peak_throughput(d, t, {}, p).total();
  return peak_throughput(d, t, {"DSP", bram_arch}, p).total() / base;
}

LbFit fit_lb(const DeviceSpec& d, const ArchTable& t, const std::vector<BoostTarget>& targets) {
  LbFit f;
  const Precision ps[] = {Precision::Int2, Precision::Int4, Precision::Int8};
  for (int i = 0; i < 3; ++i) {
    const Precision p = ps[i];
    const double dsp = d.dsp_count * block_rate(find_arch(t, "DSP"), d, p);
    // boost = 1 + B*r/S, S = LB + DSP; least squares in x = 1/S
    double num = 0, den = 0;
    for (const auto& tg : targets) {
      const double br = d.bram_count * block_rate(find_arch(t, tg.bram_arch), d, p);
      num += br * (tg.boost[i] - 1.0);
      den += br * br;
    }
    if (num <= 0) throw std::runtime_error("boost targets must exceed 1");
    const double lb = den / num - dsp;
    if (lb <= 0) throw std::runtime_error("calibration needs a negative LB throughput; targets inconsistent");
    f.lb_rate[i] = lb;
    f.lbs_per_mac[i] = d.lb_count * d.lb_fmax_mhz * 1e6 / lb;
  }
  DeviceSpec fitted = d;
  fitted.lbs_per_mac = f.lbs_per_mac;
  for (const auto& tg : targets) {
    std::array<double, 3> b{};
    for (int i = 0; i < 3; ++i) b[i] = boost(fitted, t, tg.bram_arch, ps[i]);
    f.boosts.push_back(b);
  }
  return f;
}

}  // namespace bramac
