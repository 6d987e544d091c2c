// SPDX-License-Identifier: Apache-2.0
// bramac: command-line front end for the block simulator and the models.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bramac/arch_models.hpp"
#include "bramac/calibration.hpp"
#include "bramac/config.hpp"
#include "bramac/dla.hpp"
#include "bramac/efsm.hpp"
#include "bramac/gemv.hpp"
#include "bramac/verify.hpp"

namespace fs = std::filesystem;
using namespace bramac;

#ifndef BRAMAC_DATA_DIR
#define BRAMAC_DATA_DIR "data"
#endif

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string device = std::string(BRAMAC_DATA_DIR) + "/arria10gx900.json";
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

std::ofstream open_out(const Common& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  const fs::path p = fs::path(c.out_dir) / name;
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> v;
  std::stringstream ss(s);
  for (std::string x; std::getline(ss, x, ',');) {
    try {
      std::size_t pos = 0;
      v.push_back(std::stoll(x, &pos));
      if (pos != x.size()) throw std::invalid_argument(x);
    } catch (const std::exception&) {
      throw CLI::ValidationError("bad integer list: " + s);
    }
  }
  return v;
}

const Precision kAllPrec[] = {Precision::Int2, Precision::Int4, Precision::Int8};

std::vector<Precision> precisions(int bits_flag) {
  if (bits_flag == 0) return {kAllPrec, kAllPrec + 3};
  return {parse_precision(bits_flag)};
}

// ---- mac2 ----

struct Mac2Args {
  std::string variant = "2sa";
  int prec = 4;
  std::string w = "3,-2";
  std::string i = "1,2";
  std::string i_second = "0,0";
  bool unsigned_inputs = false;
  std::string trace = "mac2_trace.csv";
};

int cmd_mac2(const Common& c, const Mac2Args& a) {
  const Variant v = parse_variant(a.variant);
  const Precision p = parse_precision(a.prec);
  const auto w = parse_list(a.w), in = parse_list(a.i), in2 = parse_list(a.i_second);
  if (w.size() != 2 || in.size() != 2 || in2.size() != 2) throw CLI::ValidationError("--w, --i and --i2 take two values");
  const bool sg = !a.unsigned_inputs;
  const Mac2Operands op0{w[0], w[1], in[0], in[1]}, op1{w[0], w[1], in2[0], in2[1]};
  const std::int64_t want0 = mac2_reference(op0, p, sg);
  const std::int64_t want1 = mac2_reference(op1, p, sg);

  BramacBlock b(v, p);
  PackedWord x, y;
  x.set_element(0, p, w[0]);
  y.set_element(0, p, w[1]);
  const auto [a1, a2] = pair_addresses(0, 0);
  b.memory().write40(a1, x);
  b.memory().write40(a2, y);
  const int n = bits(p);
  Mac2Request r{a1, a2};
  r.in0 = {static_cast<std::uint32_t>(to_raw(in[0], n)), static_cast<std::uint32_t>(to_raw(in[1], n))};
  r.in1 = {static_cast<std::uint32_t>(to_raw(in2[0], n)), static_cast<std::uint32_t>(to_raw(in2[1], n))};
  const std::vector<Mac2Request> reqs{r};
  const StreamResult s = run_mac2_stream(b, reqs, p, sg);
  auto out = open_out(c, a.trace);
  write_trace_csv(out, s.trace);

  const std::int64_t got0 = s.mac2s.at(0).p[0].lane(0);
  std::cout << "variant " << to_string(v) << ", " << to_string(p) << (sg ? " signed" : " unsigned") << " inputs\n";
  std::cout << "result " << got0 << " (reference " << want0 << ")\n";
  bool ok = got0 == want0;
  if (v == Variant::TwoSA) {
    const std::int64_t got1 = s.mac2s.at(0).p[1].lane(0);
    std::cout << "array1 result " << got1 << " (reference " << want1 << ")\n";
    ok = ok && got1 == want1;
  }
  std::cout << "cycles " << s.total_cycles << ", port-busy " << s.busy_cycles << ", trace " << a.trace << '\n';
  return ok ? 0 : 1;
}

// ---- verify ----

int cmd_verify(const Common& c, std::uint64_t trials, int fault_bit) {
  VerifyOptions o;
  o.seed = c.seed;
  o.trials = trials;
  if (fault_bit >= 0) o.fault_bit = fault_bit;
  const VerifyReport r = verify_full_path(o);
  auto out = open_out(c, "verify.csv");
  out << "# schema: bramac.verify.v1\n";
  out << "case,mac2s,lane_checks,mismatches\n";
  for (const auto& k : r.cases) {
    out << k.label << ',' << k.mac2s << ',' << k.lane_checks << ',' << k.mismatches << '\n';
    std::cout << std::left << std::setw(34) << k.label << " mac2s " << std::setw(8) << k.mac2s << " mismatches "
              << k.mismatches;
    if (k.mismatches) std::cout << "  first: " << k.first_mismatch;
    std::cout << '\n';
  }
  std::cout << (r.total_mismatches() == 0 ? "PASS" : "FAIL") << ": " << r.total_mismatches() << " mismatches\n";
  return r.total_mismatches() == 0 ? 0 : 1;
}

// ---- throughput ----

int cmd_throughput(const Common& c, int prec) {
  const DeviceSpec d = load_device(c.device);
  const ArchTable t = load_archs_or_default(c.device);
  auto out = open_out(c, "throughput.csv");
  out << "# schema: bramac.throughput.v1\n";
  out << "config,precision,lb_tmacs,dsp_tmacs,bram_tmacs,total_tmacs,boost\n";
  std::cout << std::left << std::setw(12) << "config" << std::setw(6) << "prec" << std::right << std::setw(9) << "LB"
            << std::setw(9) << "DSP" << std::setw(9) << "BRAM" << std::setw(9) << "total" << std::setw(8) << "boost"
            << "  (TMAC/s)\n";
  for (Precision p : precisions(prec)) {
    const double base = peak_throughput(d, t, {}, p).total();
    for (const auto& cfg : figure_configs()) {
      const Throughput th = peak_throughput(d, t, cfg, p);
      out << cfg.label() << ',' << bits(p) << ',' << fmt(th.lb / 1e12) << ',' << fmt(th.dsp / 1e12) << ','
          << fmt(th.bram / 1e12) << ',' << fmt(th.total() / 1e12) << ',' << fmt(th.total() / base) << '\n';
      std::cout << std::left << std::setw(12) << cfg.label() << std::setw(6) << bits(p) << std::right << std::setw(9)
                << fmt(th.lb / 1e12, 2) << std::setw(9) << fmt(th.dsp / 1e12, 2) << std::setw(9)
                << fmt(th.bram / 1e12, 2) << std::setw(9) << fmt(th.total() / 1e12, 2) << std::setw(8)
                << fmt(th.total() / base, 2) << '\n';
    }
  }
  return 0;
}

// ---- utilization ----

int cmd_utilization(const Common& c) {
  auto out = open_out(c, "utilization.csv");
  out << "# schema: bramac.utilization.v1\n";
  out << "arch,weight_bits,weight_rows,overhead_rows,efficiency\n";
  double bramac_mean = 0;
  std::vector<double> means(baseline_budgets().size(), 0.0);
  for (int p = 2; p <= 8; ++p) {
    const double e = bramac_utilization(p);
    bramac_mean += e / 7;
    out << "BRAMAC," << p << ",," << ',' << fmt(e) << '\n';
    int k = 0;
    for (const auto& b : baseline_budgets()) {
      const RowUsage u = bitserial_utilization(b, p);
      means[k++] += u.efficiency / 7;
      out << b.name << ',' << p << ',' << u.weight_rows << ',' << u.overhead_rows << ',' << fmt(u.efficiency) << '\n';
    }
  }
  const double ccb = (means[0] + means[1]) / 2;
  std::cout << "mean efficiency over 2..8-bit weights\n";
  std::cout << "  BRAMAC      " << fmt(bramac_mean, 3) << '\n';
  int k = 0;
  for (const auto& b : baseline_budgets()) std::cout << "  " << std::left << std::setw(11) << b.name << ' ' << fmt(means[k++], 3) << '\n';
  std::cout << "  BRAMAC/CCB    " << fmt(bramac_mean / ccb, 3) << " (CCB = mean of both packs)\n";
  std::cout << "  BRAMAC/CoMeFa " << fmt(bramac_mean / means[2], 3) << '\n';
  auto sum = open_out(c, "utilization_summary.csv");
  sum << "# schema: bramac.utilization-summary.v1\n";
  sum << "metric,value\n";
  sum << "bramac_mean," << fmt(bramac_mean) << '\n';
  k = 0;
  for (const auto& b : baseline_budgets()) sum << b.name << "_mean," << fmt(means[k++]) << '\n';
  sum << "ratio_vs_ccb," << fmt(bramac_mean / ccb) << '\n';
  sum << "ratio_vs_comefa," << fmt(bramac_mean / means[2]) << '\n';
  return 0;
}

// ---- gemv ----

struct GemvArgs {
  std::string grid;
  std::string variant = "1da";
  int m = 0, n = 0, prec = 8, batch = 1;
  bool non_persistent = false;
  bool unsigned_inputs = false;
};

int cmd_gemv(const Common& c, const GemvArgs& a) {
  const Variant v = parse_variant(a.variant);
  if (a.m > 0 || a.n > 0) {
    if (a.m < 1 || a.n < 1) throw CLI::ValidationError("--m and --n must both be positive");
    GemvWorkload w{a.m, a.n, parse_precision(a.prec), !a.unsigned_inputs, !a.non_persistent, a.batch};
    auto out = open_out(c, "gemv_workload.csv");
    out << "# schema: bramac.gemv-workload.v1\n";
    out << "arch,total,compute,instruction,readout,load_exposed,lane_efficiency\n";
    auto row = [&](const std::string& name, const GemvReport& r) {
      out << name << ',' << r.total_cycles << ',' << r.breakdown.compute << ',' << r.breakdown.instruction << ','
          << r.breakdown.readout << ',' << r.breakdown.load_exposed << ',' << fmt(r.lane_efficiency) << '\n';
      std::cout << std::left << std::setw(14) << name << " cycles " << std::setw(8) << r.total_cycles << " lane eff "
                << fmt(r.lane_efficiency, 3) << '\n';
    };
    row("BRAMAC-" + to_string(v), cycles_bramac(w, v));
    for (const auto& b : gemv_baselines()) row(b.name, cycles_bitserial(w, b.pack, b.input_copy));
    return 0;
  }

  const GridSpec g = a.grid.empty() ? GridSpec{} : load_grid(a.grid);
  const auto cells = speedup_grid(g, v);
  const auto bases = gemv_baselines();
  auto style = [](bool pers) { return pers ? std::string("persistent") : std::string("nonpersistent"); };
  auto cell_at = [&](bool pers, Precision p, int n, int m) -> const SpeedupCell& {
    for (const auto& x : cells)
      if (x.persistent == pers && x.prec == p && x.n == n && x.m == m) return x;
    throw std::logic_error("missing grid cell");
  };
  auto heat = [&](const std::string& name, bool pers, Precision p, auto value) {
    auto out = open_out(c, name);
    out << "# schema: bramac.gemv-heatmap.v1 rows=n cols=m\n";
    out << "n";
    for (int m : g.ms) out << ",m" << m;
    out << '\n';
    for (int n : g.ns) {
      out << n;
      for (int m : g.ms) out << ',' << fmt(value(cell_at(pers, p, n, m)), 4);
      out << '\n';
    }
  };
  auto summary = open_out(c, "gemv_summary.csv");
  summary << "# schema: bramac.gemv-summary.v1\n";
  summary << "style,precision,max_speedup,argmax_m,argmax_n\n";
  for (bool pers : {true, false})
    for (Precision p : kAllPrec) {
      const std::string tag = std::to_string(bits(p)) + "bit_" + style(pers);
      for (std::size_t k = 0; k < bases.size(); ++k)
        heat("gemv_" + tag + "_" + bases[k].name + ".csv", pers, p, [&](const SpeedupCell& x) {
          return static_cast<double>(x.baseline_cycles[k]) / static_cast<double>(x.bramac_cycles);
        });
      heat("gemv_" + tag + "_best.csv", pers, p, [](const SpeedupCell& x) { return x.speedup_best; });
      const SpeedupCell* best = nullptr;
      for (const auto& x : cells)
        if (x.persistent == pers && x.prec == p && (!best || x.speedup_best > best->speedup_best)) best = &x;
      summary << style(pers) << ',' << bits(p) << ',' << fmt(best->speedup_best, 4) << ',' << best->m << ','
              << best->n << '\n';
      std::cout << std::left << std::setw(14) << style(pers) << bits(p) << "-bit max speedup " << fmt(best->speedup_best, 2)
                << " at m=" << best->m << " n=" << best->n << '\n';
    }
  return 0;
}

// ---- dla ----

struct DlaArgs {
  std::vector<std::string> networks;
  std::string variant = "all";
  int prec = 0;
  bool run_dse = false;
  std::string config;
  bool grid_dump = false;
  std::string clock = "min";
  int threads = 0;
};

void write_eval(std::ostream& o, const std::string& net, const std::string& var, const Evaluation& e) {
  o << net << ',' << var << ',' << bits(e.cfg.prec) << ',' << e.cfg.q1 << ',' << e.cfg.q2 << ',' << e.cfg.c << ','
    << e.cfg.k << ',' << e.area.dsps << ',' << e.area.buffer_brams << ',' << e.area.compute_brams << ',' << e.cycles
    << ',' << fmt(e.perf, 4) << ',' << fmt(e.area.normalized_area, 8) << ',' << fmt(e.objective, 4) << ','
    << int(e.feasible) << '\n';
}

const char* kEvalHeader =
    "network,variant,precision,q1,q2,c,k,dsps,buffer_brams,compute_brams,cycles,perf,area,objective,feasible\n";

int cmd_dla(const Common& c, const DlaArgs& a) {
  const DeviceSpec d = load_device(c.device);
  const ArchTable t = load_archs_or_default(c.device);
  const ClockPolicy clock = a.clock == "dsp" ? ClockPolicy::DspClock : ClockPolicy::MinOfDspAndBramac;
  const DlaContext ctx = DlaContext::from(d, t, clock);
  std::vector<std::optional<Variant>> variants;
  if (a.variant == "all") variants = {std::nullopt, Variant::TwoSA, Variant::OneDA};
  else if (a.variant == "none") variants = {std::nullopt};
  else variants = {parse_variant(a.variant)};
  auto vname = [](std::optional<Variant> v) { return v ? to_string(*v) : std::string("DLA"); };

  if (!a.config.empty()) {
    if (variants.size() != 1 || a.prec == 0 || a.networks.size() != 1)
      throw CLI::ValidationError("--config needs one --network, one --variant and --prec");
    const Network net = load_network(a.networks[0]);
    const AccelConfig cfg = AccelConfig::parse(a.config, parse_precision(a.prec), variants[0]);
    const Evaluation e = evaluate(net, cfg, ctx);
    auto out = open_out(c, "dla_config.csv");
    out << "# schema: bramac.dla-eval.v1\n" << kEvalHeader;
    write_eval(out, net.name, vname(variants[0]), e);
    std::cout << net.name << ' ' << vname(variants[0]) << ' ' << to_string(cfg.prec) << ' ' << cfg.str() << ": DSPs "
              << e.area.dsps << ", BRAMs " << e.area.brams() << " (" << e.area.compute_brams << " compute), cycles "
              << e.cycles << ", perf " << fmt(e.perf, 2) << "/s" << (e.feasible ? "" : ", INFEASIBLE") << '\n';
    return e.feasible ? 0 : 2;
  }
  if (!a.run_dse) throw CLI::ValidationError("dla needs --dse or --config");

  auto best_out = open_out(c, "dla_best.csv");
  best_out << "# schema: bramac.dla-eval.v1\n" << kEvalHeader;
  auto sp_out = open_out(c, "dla_speedup.csv");
  sp_out << "# schema: bramac.dla-speedup.v1\n";
  sp_out << "network,variant,precision,speedup,area_ratio,perf_per_area_ratio\n";
  std::ofstream grid;
  if (a.grid_dump) {
    grid = open_out(c, "dla_grid.csv");
    grid << "# schema: bramac.dla-eval.v1\n" << kEvalHeader;
  }
  for (const auto& path : a.networks) {
    const Network net = load_network(path);
    for (Precision p : precisions(a.prec)) {
      std::optional<Evaluation> base;
      for (const auto& v : variants) {
        const DseResult r = dse(net, v, p, ctx, {}, a.threads, a.grid_dump);
        write_eval(best_out, net.name, vname(v), r.best);
        if (a.grid_dump)
          for (const auto& e : r.grid) write_eval(grid, net.name, vname(v), e);
        std::cout << std::left << std::setw(9) << net.name << ' ' << std::setw(4) << vname(v) << ' ' << bits(p)
                  << "-bit best " << std::setw(18) << r.best.cfg.str() << " DSPs " << std::setw(5) << r.best.area.dsps
                  << " BRAMs " << std::setw(5) << r.best.area.brams() << " cycles " << r.best.cycles;
        if (!v) base = r.best;
        if (v && base) {
          const double s = r.best.perf / base->perf;
          const double ar = r.best.area.normalized_area / base->area.normalized_area;
          sp_out << net.name << ',' << vname(v) << ',' << bits(p) << ',' << fmt(s, 6) << ',' << fmt(ar, 6) << ','
                 << fmt(s / ar, 6) << '\n';
          std::cout << "  speedup " << fmt(s, 2) << " area " << fmt(ar, 2);
        }
        std::cout << '\n';
      }
    }
  }
  return 0;
}

// ---- calibrate ----

int cmd_calibrate(const Common& c, const std::string& out_name) {
  DeviceSpec d = load_device(c.device);
  const ArchTable t = load_archs_or_default(c.device);
  const auto area_targets = default_area_targets();
  const BramFit bf = fit_bram_count(d, t, area_targets);
  d.bram_count = bf.bram_count;
  const LbFit lf = fit_lb(d, t, default_boost_targets());
  d.lbs_per_mac = lf.lbs_per_mac;

  std::ostringstream note;
  note << "bram_count fitted to DSP-plus-BRAM area ratios of the reference DLA configurations (";
  for (std::size_t i = 0; i < area_targets.size(); ++i)
    note << (i ? ", " : "") << area_targets[i].network << ' ' << to_string(area_targets[i].variant) << ' '
         << fmt(bf.ratios[i], 3) << " vs " << area_targets[i].target;
  note << "); lbs_per_mac fitted by least squares to the BRAMAC total-throughput boosts";
  fs::create_directories(c.out_dir);
  save_device((fs::path(c.out_dir) / out_name).string(), d, note.str());

  std::cout << "bram_count " << bf.bram_count << " (sse " << fmt(bf.sse, 6) << ")\n";
  for (std::size_t i = 0; i < area_targets.size(); ++i)
    std::cout << "  area ratio " << area_targets[i].network << ' ' << to_string(area_targets[i].variant) << ' '
              << fmt(bf.ratios[i], 3) << " target " << area_targets[i].target << '\n';
  const auto bt = default_boost_targets();
  for (int i = 0; i < 3; ++i)
    std::cout << "LB " << bits(kAllPrec[i]) << "-bit " << fmt(lf.lb_rate[i] / 1e12, 3) << " TMAC/s, "
              << fmt(lf.lbs_per_mac[i], 4) << " LBs per MAC at " << d.lb_fmax_mhz << " MHz\n";
  for (std::size_t k = 0; k < bt.size(); ++k) {
    std::cout << "  " << bt[k].bram_arch << " boosts";
    for (int i = 0; i < 3; ++i) std::cout << ' ' << fmt(lf.boosts[k][i], 3) << " (target " << bt[k].boost[i] << ')';
    std::cout << '\n';
  }
  std::cout << "wrote " << out_name << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BRAMAC block simulator and evaluation models"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--seed", common.seed, "RNG seed");
    s->add_option("--out-dir", common.out_dir, "directory for output files");
    s->add_option("--device", common.device, "device JSON file");
  };

  Mac2Args m2;
  auto* s_mac2 = app.add_subcommand("mac2", "simulate one MAC2 and write its cycle trace");
  add_common(s_mac2);
  s_mac2->add_option("--variant", m2.variant, "2sa or 1da")->check(CLI::IsMember({"2sa", "1da", "2SA", "1DA"}));
  s_mac2->add_option("--prec", m2.prec, "operand bits")->check(CLI::IsMember({2, 4, 8}));
  s_mac2->add_option("--w", m2.w, "weights w1,w2");
  s_mac2->add_option("--i", m2.i, "inputs i1,i2");
  s_mac2->add_option("--i2", m2.i_second, "inputs i3,i4 for the second 2SA array");
  s_mac2->add_flag("--unsigned", m2.unsigned_inputs, "unsigned inputs");
  s_mac2->add_option("--trace", m2.trace, "trace file name under --out-dir");

  std::uint64_t trials = 100000;
  int fault_bit = -1;
  auto* s_verify = app.add_subcommand("verify", "check the full block path against the reference MAC2");
  add_common(s_verify);
  s_verify->add_option("--trials", trials, "random MAC2s per variant and 4/8-bit precision");
  s_verify->add_option("--fault-bit", fault_bit, "flip this adder output bit (0..159) in array 0")->check(CLI::Range(-1, 159));

  int tp_prec = 0;
  auto* s_tp = app.add_subcommand("throughput", "peak MAC throughput of each FPGA configuration");
  add_common(s_tp);
  s_tp->add_option("--prec", tp_prec, "2, 4 or 8 (default: all)")->check(CLI::IsMember({0, 2, 4, 8}));

  auto* s_util = app.add_subcommand("utilization", "BRAM storage efficiency for 2..8-bit weights");
  add_common(s_util);

  GemvArgs ga;
  auto* s_gemv = app.add_subcommand("gemv", "GEMV cycles versus bit-serial compute-in-BRAM baselines");
  add_common(s_gemv);
  s_gemv->add_option("--grid", ga.grid, "grid JSON (default 4x4 sizes)");
  s_gemv->add_option("--variant", ga.variant, "2sa or 1da")->check(CLI::IsMember({"2sa", "1da", "2SA", "1DA"}));
  s_gemv->add_option("--m", ga.m, "single workload: output rows");
  s_gemv->add_option("--n", ga.n, "single workload: reduction length");
  s_gemv->add_option("--prec", ga.prec, "single workload precision")->check(CLI::IsMember({2, 4, 8}));
  s_gemv->add_option("--batch", ga.batch, "single workload: input vectors")->check(CLI::PositiveNumber);
  s_gemv->add_flag("--non-persistent", ga.non_persistent, "single workload: stream weight tiles");
  s_gemv->add_flag("--unsigned", ga.unsigned_inputs, "single workload: unsigned inputs");

  DlaArgs da;
  auto* s_dla = app.add_subcommand("dla", "CNN accelerator cycle/area model and design-space search");
  add_common(s_dla);
  s_dla->add_option("--network", da.networks, "network JSON file(s)")->required();
  s_dla->add_option("--variant", da.variant, "none, 2sa, 1da or all")
      ->check(CLI::IsMember({"none", "2sa", "1da", "all", "2SA", "1DA"}));
  s_dla->add_option("--prec", da.prec, "2, 4 or 8 (default: all)")->check(CLI::IsMember({0, 2, 4, 8}));
  s_dla->add_flag("--dse", da.run_dse, "run the grid search");
  s_dla->add_option("--config", da.config, "evaluate one configuration, e.g. 2+2,10,50");
  s_dla->add_flag("--grid-dump", da.grid_dump, "write every evaluated point");
  s_dla->add_option("--clock", da.clock, "min: min(DSP, BRAMAC) clock; dsp: DSP clock")->check(CLI::IsMember({"min", "dsp"}));
  s_dla->add_option("--threads", da.threads, "worker threads (0 = auto)");

  std::string cal_out = "arria10gx900.calibrated.json";
  auto* s_cal = app.add_subcommand("calibrate", "fit bram_count and LB throughput, write a device file");
  add_common(s_cal);
  s_cal->add_option("--out", cal_out, "output file name under --out-dir");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*s_mac2) return cmd_mac2(common, m2);
    if (*s_verify) return cmd_verify(common, trials, fault_bit);
    if (*s_tp) return cmd_throughput(common, tp_prec);
    if (*s_util) return cmd_utilization(common);
    if (*s_gemv) return cmd_gemv(common, ga);
    if (*s_dla) return cmd_dla(common, da);
    if (*s_cal) return cmd_calibrate(common, cal_out);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
