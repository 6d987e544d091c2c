// SPDX-License-Identifier: Apache-2.0
#include "bramac/dla.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bramac {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

std::uint64_t ConvLayer::macs() const {
  return static_cast<std::uint64_t>(Hout()) * Wout() * K * C * R * S;
}

std::string AccelConfig::str() const {
  std::ostringstream o;
  o << '(' << q1;
  if (variant) o << '+' << q2;
  o << ", " << c << ", " << k << ')';
  return o.str();
}

AccelConfig AccelConfig::parse(const std::string& s, Precision p, std::optional<Variant> v) {
  std::string t;
  for (char ch : s)
    if (ch != ' ' && ch != '(' && ch != ')') t += ch;
  AccelConfig cfg;
  cfg.prec = p;
  cfg.variant = v;
  std::vector<std::string> parts;
  std::stringstream ss(t);
  for (std::string x; std::getline(ss, x, ',');) parts.push_back(x);
  if (parts.size() != 3) throw std::invalid_argument("config must be 'q,c,k' or 'q1+q2,c,k': " + s);
  try {
    const auto plus = parts[0].find('+');
    if (plus != std::string::npos) {
      cfg.q1 = std::stoi(parts[0].substr(0, plus));
      cfg.q2 = std::stoi(parts[0].substr(plus + 1));
    } else {
      cfg.q1 = std::stoi(parts[0]);
    }
    cfg.c = std::stoi(parts[1]);
    cfg.k = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad config: " + s);
  }
  if (cfg.q1 < 1 || cfg.q2 < 0 || cfg.c < 1 || cfg.k < 1) throw std::invalid_argument("config values out of range: " + s);
  if (!v && cfg.q2 != 0) throw std::invalid_argument("BRAMAC columns need a BRAMAC variant: " + s);
  return cfg;
}

int dsp_pack(Precision p) {
  switch (p) {
    case Precision::Int2: return 4;
    case Precision::Int4: return 2;
    case Precision::Int8: return 1;
  }
  return 1;
}

int dsp_count(const AccelConfig& cfg) {
  // ceil(1.5 * q1 * c * k / pack) in integers
  return static_cast<int>(ceil_div(3ull * cfg.q1 * cfg.c * cfg.k, 2ull * dsp_pack(cfg.prec)));
}

int bramac_block_count(const AccelConfig& cfg) {
  if (!cfg.variant || cfg.q2 == 0) return 0;
  const int lat = mac2_latency(*cfg.variant, cfg.prec, true);
  // A 2SA block's second array serves a second output column.
  const int positions = info(*cfg.variant).dummy_arrays;
  return static_cast<int>(ceil_div(cfg.q2, positions) * ceil_div(cfg.k, info(cfg.prec).lanes) *
                          ceil_div(static_cast<std::uint64_t>(cfg.c) * lat, 2));
}

int stream_buffer_brams(const Network& net, const AccelConfig& cfg) {
  std::uint64_t act = 0;
  for (const auto& l : net.layers)
    act = std::max<std::uint64_t>(act, static_cast<std::uint64_t>(l.H) * l.W * l.C +
                                           static_cast<std::uint64_t>(l.Hout()) * l.Wout() * l.K);
  const std::uint64_t bits_total = act * bits(cfg.prec);
  const std::uint64_t banks = ceil_div(static_cast<std::uint64_t>(cfg.q1 + cfg.q2 + 2) * cfg.c * bits(cfg.prec), 40);
  return static_cast<int>(banks * ceil_div(bits_total, banks * 20480));
}

int filter_cache_brams(const Network& net, const AccelConfig& cfg) {
  std::uint64_t depth = 0;
  for (const auto& l : net.layers)
    depth = std::max<std::uint64_t>(depth, ceil_div(l.C, cfg.c) * l.R * l.S);
  return static_cast<int>(ceil_div(static_cast<std::uint64_t>(cfg.k) * cfg.c * bits(cfg.prec), 40) *
                          ceil_div(2 * depth, 512));
}

LayerCycles layer_cycles(const ConvLayer& l, const AccelConfig& cfg) {
  LayerCycles r;
  const std::uint64_t tiles = ceil_div(l.K, cfg.k) * ceil_div(l.Wout(), cfg.q1 + cfg.q2) * l.Hout();
  r.dsp = tiles * ceil_div(l.C, cfg.c) * l.R * l.S;
  if (!cfg.variant || cfg.q2 == 0) return r;
  const Variant v = *cfg.variant;
  const std::uint64_t lat = mac2_latency(v, cfg.prec, true);
  // The c-wide slice of a tile is spread over ceil(c*lat/2) blocks per
  // output-channel group; each block works through its share of MAC2s.
  const std::uint64_t blocks_per_slice = ceil_div(cfg.c * lat, 2);
  const std::uint64_t pairs = ceil_div(static_cast<std::uint64_t>(l.C) * l.R * l.S, 2);
  const std::uint64_t mac2s = ceil_div(pairs, blocks_per_slice);
  const std::uint64_t readouts = ceil_div(2 * mac2s, info(cfg.prec).max_dot);
  r.bramac = info(v).prologue_cycles + tiles * (mac2s * lat + readouts * info(v).readout_cycles);
  return r;
}

std::uint64_t network_cycles(const Network& net, const AccelConfig& cfg) {
  std::uint64_t t = 0;
  for (const auto& l : net.layers) t += layer_cycles(l, cfg).total();
  return t;
}

DlaContext DlaContext::from(const DeviceSpec& d, const ArchTable& t, ClockPolicy c) {
  DlaContext x;
  x.device = d;
  const ArchSpec& a2 = find_arch(t, "BRAMAC-2SA");
  const ArchSpec& a1 = find_arch(t, "BRAMAC-1DA");
  x.overhead_2sa = a2.block_overhead;
  x.overhead_1da = a1.block_overhead;
  x.fmax_2sa = frequency_mhz(a2, d);
  x.fmax_1da = frequency_mhz(a1, d);
  x.clock = c;
  return x;
}

double DlaContext::overhead(std::optional<Variant> v) const {
  if (!v) return 0.0;
  return *v == Variant::TwoSA ? overhead_2sa : overhead_1da;
}

double DlaContext::clock_mhz(std::optional<Variant> v) const {
  if (!v || clock == ClockPolicy::DspClock) return device.dsp_fmax_mhz;
  return std::min(device.dsp_fmax_mhz, *v == Variant::TwoSA ? fmax_2sa : fmax_1da);
}

double area_normalized(const AreaReport& a, const DlaContext& ctx, std::optional<Variant> v) {
  const DeviceSpec& d = ctx.device;
  const double a_dsp = d.area_dsp / d.dsp_count;
  const double a_bram = d.area_bram / d.bram_count;
  return a.dsps * a_dsp + a.brams() * a_bram * (1.0 + ctx.overhead(v));
}

AreaReport area_report(const Network& net, const AccelConfig& cfg, const DlaContext& ctx) {
  AreaReport a;
  a.dsps = dsp_count(cfg);
  a.buffer_brams = stream_buffer_brams(net, cfg) + filter_cache_brams(net, cfg);
  a.compute_brams = bramac_block_count(cfg);
  a.normalized_area = area_normalized(a, ctx, cfg.variant);
  return a;
}

Evaluation evaluate(const Network& net, const AccelConfig& cfg, const DlaContext& ctx) {
  Evaluation e;
  e.cfg = cfg;
  e.area = area_report(net, cfg, ctx);
  e.feasible = e.area.dsps <= ctx.device.dsp_count && e.area.brams() <= ctx.device.bram_count;
  e.cycles = network_cycles(net, cfg);
  e.perf = ctx.clock_mhz(cfg.variant) * 1e6 / static_cast<double>(e.cycles);
  e.objective = e.perf * e.perf / e.area.normalized_area;
  return e;
}

DseResult dse(const Network& net, std::optional<Variant> v, Precision p, const DlaContext& ctx, const DseBounds& b,
              int threads, bool keep_grid) {
  std::vector<AccelConfig> points;
  const Range q2r = v ? b.q2 : Range{0, 0};
  for (int q1 = b.q1.lo; q1 <= b.q1.hi; q1 += b.q1.step)
    for (int q2 = q2r.lo; q2 <= q2r.hi; q2 += std::max(1, q2r.step))
      for (int c = b.c.lo; c <= b.c.hi; c += b.c.step)
        for (int k = b.k.lo; k <= b.k.hi; k += b.k.step) points.push_back({q1, q2, c, k, p, v});

  std::vector<Evaluation> evals(points.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t nt = threads > 0 ? static_cast<std::size_t>(threads) : std::min<std::size_t>(hw, 16);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < points.size(); i += nt) evals[i] = evaluate(net, points[i], ctx);
    });
  for (auto& th : pool) th.join();

  DseResult r;
  r.points = points.size();
  bool have = false;
  for (const auto& e : evals) {  // points are in lexicographic order
    if (!e.feasible) continue;
    ++r.feasible;
    if (!have || e.objective > r.best.objective) {
      r.best = e;
      have = true;
    }
  }
  if (!have) throw std::runtime_error("design space has no feasible configuration");
  if (keep_grid) r.grid = std::move(evals);
  return r;
}

std::vector<ReferenceRow> reference_table() {
  using P = Precision;
  const std::optional<Variant> none, sa = Variant::TwoSA, da = Variant::OneDA;
  auto row = [](const char* net, P p, std::optional<Variant> v, const char* cfg, int d, int b) {
    return ReferenceRow{net, p, v, AccelConfig::parse(cfg, p, v), d, b};
  };
  return {
      row("alexnet", P::Int2, none, "2,16,96", 1152, 352),
      row("alexnet", P::Int4, none, "3,16,32", 1152, 544),
      row("alexnet", P::Int8, none, "3,12,24", 1296, 868),
      row("alexnet", P::Int2, sa, "1+2,24,140", 1260, 1128),
      row("alexnet", P::Int4, sa, "1+2,16,100", 1200, 1600),
      row("alexnet", P::Int8, sa, "2+2,10,50", 1500, 1740),
      row("alexnet", P::Int2, da, "2+2,16,100", 1200, 816),
      row("alexnet", P::Int4, da, "1+1,12,130", 1170, 1080),
      row("alexnet", P::Int8, da, "1+1,8,100", 1200, 1664),
      row("resnet34", P::Int2, none, "4,12,72", 1296, 792),
      row("resnet34", P::Int4, none, "3,8,64", 1152, 736),
      row("resnet34", P::Int8, none, "3,4,64", 1152, 1452),
      row("resnet34", P::Int2, sa, "1+2,16,140", 840, 832),
      row("resnet34", P::Int4, sa, "2+2,12,70", 1260, 972),
      row("resnet34", P::Int8, sa, "2+2,6,65", 1170, 1530),
      row("resnet34", P::Int2, da, "2+2,22,80", 1320, 924),
      row("resnet34", P::Int4, da, "1+1,16,90", 1080, 1056),
      row("resnet34", P::Int8, da, "1+1,12,65", 1170, 1788),
  };
}

}  // namespace bramac
