// SPDX-License-Identifier: Apache-2.0
// Shared by the unit tests and the acceptance run.
#pragma once

#include <algorithm>
#include <vector>

#include "bramac/dla.hpp"

namespace bramac::testing {

const Precision kAllPrecs[] = {Precision::Int2, Precision::Int4, Precision::Int8};

// Loop-nest oracle: walks every tile and counts cycles one step at a time.
// Constants are written out rather than taken from the library.
inline LayerCycles loop_nest_cycles(const ConvLayer& l, const AccelConfig& cfg) {
  const int pi = cfg.prec == Precision::Int2 ? 0 : cfg.prec == Precision::Int4 ? 1 : 2;
  const int lat2[] = {5, 7, 11}, lat1[] = {3, 4, 6}, maxdot[] = {16, 256, 2048};
  const int q = cfg.q1 + cfg.q2;
  const int ho = (l.H + 2 * l.pad - l.R) / l.stride + 1;
  const int wo = (l.W + 2 * l.pad - l.S) / l.stride + 1;
  LayerCycles r;
  const bool bramac = cfg.variant && cfg.q2 > 0;
  int lat = 0, readout = 0, prologue = 0, blocks = 0;
  if (bramac) {
    const bool two = *cfg.variant == Variant::TwoSA;
    lat = two ? lat2[pi] : lat1[pi];
    readout = two ? 8 : 4;
    prologue = two ? 2 : 1;
    blocks = (cfg.c * lat + 1) / 2;
    r.bramac = prologue;
  }
  for (int y = 0; y < ho; ++y)
    for (int x0 = 0; x0 < wo; x0 += q)
      for (int k0 = 0; k0 < l.K; k0 += cfg.k) {
        for (int c0 = 0; c0 < l.C; c0 += cfg.c)
          for (int i = 0; i < l.R; ++i)
            for (int j = 0; j < l.S; ++j) ++r.dsp;
        if (!bramac) continue;
        // products of one output go pairwise to the blocks, round robin
        std::vector<int> load(blocks, 0);
        const int products = l.C * l.R * l.S;
        for (int pr = 0, b = 0; pr < products; pr += 2, b = (b + 1) % blocks) ++load[b];
        int busiest = 0;
        for (int v : load) busiest = std::max(busiest, v);
        int len = 0;
        for (int t = 0; t < busiest; ++t) {
          r.bramac += lat;
          len += 2;
          if (len == maxdot[pi]) {
            r.bramac += readout;
            len = 0;
          }
        }
        if (len > 0) r.bramac += readout;
      }
  return r;
}

}  // namespace bramac::testing
