// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "bramac/arch_models.hpp"
#include "bramac/calibration.hpp"
#include "bramac/config.hpp"
#include "bramac/instruction.hpp"

using namespace bramac;

namespace {
const Precision kPrecs[] = {Precision::Int2, Precision::Int4, Precision::Int8};
}

TEST_CASE("architecture table latencies agree with the block model") {
  const ArchTable t = default_arch_table();
  for (Precision p : kPrecs) {
    const int i = prec_index(p);
    CHECK(find_arch(t, "BRAMAC-2SA").latency[i] == mac2_latency(Variant::TwoSA, p, true));
    CHECK(find_arch(t, "BRAMAC-1DA").latency[i] == mac2_latency(Variant::OneDA, p, true));
    // 2 MACs per lane, one lane per output
    CHECK(find_arch(t, "BRAMAC-2SA").macs[i] == 2 * 2 * info(p).lanes);
    CHECK(find_arch(t, "BRAMAC-1DA").macs[i] == 2 * info(p).lanes);
  }
  CHECK_THROWS_AS(find_arch(t, "nope"), std::invalid_argument);
}

TEST_CASE("frequencies") {
  const ArchTable t = default_arch_table();
  const DeviceSpec d = default_device();
  CHECK(frequency_mhz(find_arch(t, "DSP"), d) == doctest::Approx(549));
  CHECK(frequency_mhz(find_arch(t, "BRAM"), d) == doctest::Approx(645));
  CHECK(frequency_mhz(find_arch(t, "CCB"), d) == doctest::Approx(645 / 1.6));
  CHECK(frequency_mhz(find_arch(t, "BRAMAC-2SA"), d) == doctest::Approx(586));
  CHECK(frequency_mhz(find_arch(t, "BRAMAC-1DA"), d) == doctest::Approx(500));
}

TEST_CASE("conventional configuration has no BRAM compute") {
  const DeviceSpec d = default_device();
  const ArchTable t = default_arch_table();
  for (Precision p : kPrecs) {
    const Throughput th = peak_throughput(d, t, {}, p);
    CHECK(th.bram == 0);
    CHECK(th.dsp == doctest::Approx(1518.0 * find_arch(t, "DSP").macs[prec_index(p)] * 549e6));
    CHECK(th.lb == doctest::Approx(lb_rate(d, p)));
    // lower precision is never slower
    if (p != Precision::Int8) CHECK(th.total() > peak_throughput(d, t, {}, Precision::Int8).total());
  }
}

TEST_CASE("default device matches the committed device file") {
  const DeviceSpec a = default_device();
  const DeviceSpec b = load_device(BRAMAC_DATA_DIR "/arria10gx900.json");
  CHECK(a.bram_count == b.bram_count);
  CHECK(a.lb_count == b.lb_count);
  CHECK(a.dsp_count == b.dsp_count);
  for (int i = 0; i < 3; ++i) CHECK(a.lbs_per_mac[i] == doctest::Approx(b.lbs_per_mac[i]).epsilon(1e-9));
}

TEST_CASE("calibrated boosts") {
  const DeviceSpec d = load_device(BRAMAC_DATA_DIR "/arria10gx900.json");
  const ArchTable t = default_arch_table();
  for (const auto& bt : default_boost_targets())
    for (Precision p : kPrecs) CHECK(std::abs(boost(d, t, bt.bram_arch, p) - bt.boost[prec_index(p)]) <= 0.15);
  // boosts shrink with precision
  for (const auto& bt : default_boost_targets()) {
    CHECK(boost(d, t, bt.bram_arch, Precision::Int2) > boost(d, t, bt.bram_arch, Precision::Int4));
    CHECK(boost(d, t, bt.bram_arch, Precision::Int4) > boost(d, t, bt.bram_arch, Precision::Int8));
  }
}

TEST_CASE("bram count fit is reproducible from the defaults") {
  const BramFit f = fit_bram_count(default_device(), default_arch_table(), default_area_targets());
  CHECK(f.bram_count == default_device().bram_count);
  const auto targets = default_area_targets();
  for (std::size_t i = 0; i < targets.size(); ++i) CHECK(std::abs(f.ratios[i] - targets[i].target) < 0.05);
}

TEST_CASE("lb fit is a least-squares optimum") {
  const DeviceSpec d = default_device();
  const ArchTable t = default_arch_table();
  const auto targets = default_boost_targets();
  const LbFit f = fit_lb(d, t, targets);
  auto err = [&](DeviceSpec x) {
    double e = 0;
    for (const auto& bt : targets)
      for (Precision p : kPrecs) {
        const double b = boost(x, t, bt.bram_arch, p) - bt.boost[prec_index(p)];
        e += b * b;
      }
    return e;
  };
  DeviceSpec x = d;
  x.lbs_per_mac = f.lbs_per_mac;
  const double e0 = err(x);
  for (int i = 0; i < 3; ++i)
    for (double s : {0.97, 1.03}) {
      DeviceSpec y = x;
      y.lbs_per_mac[i] *= s;
      CHECK(err(y) >= e0);
    }
}

TEST_CASE("next supported precision") {
  CHECK(next_supported_bits(2) == 2);
  CHECK(next_supported_bits(3) == 4);
  CHECK(next_supported_bits(4) == 4);
  CHECK(next_supported_bits(5) == 8);
  CHECK(next_supported_bits(8) == 8);
  CHECK_THROWS(next_supported_bits(1));
  CHECK_THROWS(next_supported_bits(9));
}

TEST_CASE("BRAMAC utilization") {
  for (int p = 2; p <= 8; ++p) {
    const double e = bramac_utilization(p);
    CHECK(e > 0);
    CHECK(e <= 1);
    if (p == 2 || p == 4 || p == 8) CHECK(e == 1.0);
    else CHECK(e < 1.0);
    CHECK(e == doctest::Approx(double(p) / next_supported_bits(p)));
  }
}

TEST_CASE("bit-serial row budgets") {
  for (const auto& b : baseline_budgets())
    for (int p = 2; p <= 8; ++p) {
      const RowUsage u = bitserial_utilization(b, p);
      CHECK(u.weight_rows % p == 0);
      CHECK(u.weight_rows + u.overhead_rows <= kMainRows);
      CHECK(kMainRows - u.overhead_rows - u.weight_rows < p);  // no room for one more weight
      CHECK(u.efficiency == doctest::Approx(double(u.weight_rows) / kMainRows));
    }
  // CoMeFa streams inputs, so it keeps more rows than CCB with the same pack
  const auto bs = baseline_budgets();
  for (int p = 2; p <= 8; ++p) CHECK(bitserial_utilization(bs[2], p).weight_rows >= bitserial_utilization(bs[1], p).weight_rows);
}

TEST_CASE("mean utilization ratios") {
  double br = 0, ccb = 0, comefa = 0;
  const auto bs = baseline_budgets();
  for (int p = 2; p <= 8; ++p) {
    br += bramac_utilization(p) / 7;
    ccb += (bitserial_utilization(bs[0], p).efficiency + bitserial_utilization(bs[1], p).efficiency) / 14;
    comefa += bitserial_utilization(bs[2], p).efficiency / 7;
  }
  CHECK(std::abs(br / ccb - 1.3) <= 0.15);
  CHECK(std::abs(br / comefa - 1.1) <= 0.15);
}
