// SPDX-License-Identifier: Apache-2.0
#include "bramac/config.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace bramac {

using nlohmann::json;

namespace {

json read_json(const std::string& path, const std::string& schema) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (j.value("schema", "") != schema)
    throw std::runtime_error(path + ": expected schema " + schema + ", found '" + j.value("schema", "") + "'");
  return j;
}

std::array<double, 3> per_prec_d(const json& j) { return {j.at("2"), j.at("4"), j.at("8")}; }
std::array<int, 3> per_prec_i(const json& j) { return {j.at("2"), j.at("4"), j.at("8")}; }

BlockKind parse_kind(const std::string& s) {
  if (s == "lb") return BlockKind::LB;
  if (s == "dsp") return BlockKind::DSP;
  if (s == "bram") return BlockKind::BRAM;
  throw std::runtime_error("unknown block kind: " + s);
}

}  // namespace

DeviceSpec load_device(const std::string& path) {
  const json j = read_json(path, "bramac.device.v1");
  try {
    DeviceSpec d;
    d.name = j.at("name");
    d.lb_count = j.at("lb_count");
    d.dsp_count = j.at("dsp_count");
    d.bram_count = j.at("bram_count");
    d.area_lb = j.at("area_ratio").at("lb");
    d.area_dsp = j.at("area_ratio").at("dsp");
    d.area_bram = j.at("area_ratio").at("bram");
    d.dsp_fmax_mhz = j.at("dsp_fmax_mhz");
    d.bram_fmax_mhz = j.at("bram_fmax_mhz");
    d.lb_fmax_mhz = j.at("lb_mac").at("fmax_mhz");
    d.lbs_per_mac = per_prec_d(j.at("lb_mac").at("lbs_per_mac"));
    const double sum = d.area_lb + d.area_dsp + d.area_bram;
    if (sum < 0.999 || sum > 1.001) throw std::runtime_error("area ratios must sum to 1");
    if (d.lb_count <= 0 || d.dsp_count <= 0 || d.bram_count <= 0) throw std::runtime_error("resource counts must be positive");
    return d;
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

ArchTable load_archs_or_default(const std::string& device_path) {
  const json j = read_json(device_path, "bramac.device.v1");
  if (!j.contains("archs")) return default_arch_table();
  ArchTable t;
  try {
    for (const auto& a : j.at("archs")) {
      ArchSpec s;
      s.name = a.at("name");
      s.kind = parse_kind(a.at("kind"));
      s.macs = per_prec_i(a.at("macs"));
      s.latency = per_prec_i(a.at("latency"));
      s.fmax_mhz = a.value("fmax_mhz", 0.0);
      s.fmax_divisor = a.value("fmax_divisor", 1.0);
      s.block_overhead = a.value("block_overhead", 0.0);
      s.core_overhead = a.value("core_overhead", 0.0);
      t.push_back(s);
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(device_path + ": " + e.what());
  }
  return t;
}

void save_device(const std::string& path, const DeviceSpec& d, const std::string& calibration_note) {
  json j;
  j["schema"] = "bramac.device.v1";
  j["name"] = d.name;
  j["lb_count"] = d.lb_count;
  j["dsp_count"] = d.dsp_count;
  j["bram_count"] = d.bram_count;
  j["area_ratio"] = {{"lb", d.area_lb}, {"dsp", d.area_dsp}, {"bram", d.area_bram}};
  j["dsp_fmax_mhz"] = d.dsp_fmax_mhz;
  j["bram_fmax_mhz"] = d.bram_fmax_mhz;
  j["lb_mac"] = {{"fmax_mhz", d.lb_fmax_mhz},
                 {"lbs_per_mac", {{"2", d.lbs_per_mac[0]}, {"4", d.lbs_per_mac[1]}, {"8", d.lbs_per_mac[2]}}}};
  j["calibration"] = calibration_note;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

Network load_network(const std::string& path) {
  const json j = read_json(path, "bramac.network.v1");
  Network n;
  try {
    n.name = j.at("name");
    for (const auto& l : j.at("layers")) {
      ConvLayer c;
      c.name = l.at("name");
      c.H = l.at("H");
      c.W = l.at("W");
      c.C = l.at("C");
      c.K = l.at("K");
      c.R = l.at("R");
      c.S = l.at("S");
      c.stride = l.value("stride", 1);
      c.pad = l.value("pad", 0);
      const int repeat = l.value("repeat", 1);
      if (c.Hout() < 1 || c.Wout() < 1) throw std::runtime_error("layer " + c.name + " has an empty output");
      for (int r = 0; r < repeat; ++r) n.layers.push_back(c);
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return n;
}

GridSpec load_grid(const std::string& path) {
  const json j = read_json(path, "bramac.gemv-grid.v1");
  GridSpec g;
  g.ms = j.at("m").get<std::vector<int>>();
  g.ns = j.at("n").get<std::vector<int>>();
  return g;
}

}  // namespace bramac
