// SPDX-License-Identifier: Apache-2.0
#include "bramac/verify.hpp"

#include <random>

#include "bramac/efsm.hpp"

namespace bramac {

std::uint64_t VerifyReport::total_mismatches() const {
  std::uint64_t n = 0;
  for (const auto& c : cases) n += c.mismatches;
  return n;
}

namespace {

struct Job {
  std::vector<std::vector<std::int64_t>> w1, w2;  // per MAC2, per lane
  std::vector<std::array<std::int64_t, 4>> in;    // I1..I4 values
};

void run_job(Variant v, Precision p, bool sg, const Job& job, const VerifyOptions& opt, VerifyCase& vc) {
  const int n = bits(p), L = info(p).lanes;
  BramacBlock b(v, p);
  if (opt.fault_bit) b.dummy(0).inject_adder_fault(opt.fault_bit);
  std::vector<Mac2Request> reqs;
  for (std::size_t q = 0; q < job.w1.size(); ++q) {
    auto [a1, a2] = pair_addresses(0, static_cast<int>(q));
    PackedWord x, y;
    for (int j = 0; j < L; ++j) {
      x.set_element(j, p, job.w1[q][j]);
      y.set_element(j, p, job.w2[q][j]);
    }
    b.memory().write40(a1, x);
    b.memory().write40(a2, y);
    Mac2Request r{a1, a2};
    auto raw = [&](std::int64_t val) { return static_cast<std::uint32_t>(to_raw(val, n)); };
    r.in0 = {raw(job.in[q][0]), raw(job.in[q][1])};
    r.in1 = {raw(job.in[q][2]), raw(job.in[q][3])};
    reqs.push_back(r);
  }
  const StreamResult res = run_mac2_stream(b, reqs, p, sg, true);
  const auto accs = accumulators_from_chunks(res.readout, p);
  vc.mac2s += reqs.size();
  auto miss = [&](const std::string& what) {
    if (vc.mismatches++ == 0) vc.first_mismatch = what;
  };
  if (res.mac2s.size() != reqs.size()) {
    miss("MAC2 count " + std::to_string(res.mac2s.size()));
    return;
  }
  for (int arr = 0; arr < b.arrays(); ++arr) {
    std::vector<std::int64_t> acc(L, 0);
    for (std::size_t q = 0; q < reqs.size(); ++q) {
      const std::int64_t i1 = job.in[q][2 * arr], i2 = job.in[q][2 * arr + 1];
      for (int j = 0; j < L; ++j) {
        const std::int64_t e = mac2_reference({job.w1[q][j], job.w2[q][j], i1, i2}, p, sg);
        acc[j] += e;
        ++vc.lane_checks;
        if (res.mac2s[q].p[arr].lane(j) != e)
          miss("array " + std::to_string(arr) + " mac2 " + std::to_string(q) + " lane " + std::to_string(j) +
               ": got " + std::to_string(res.mac2s[q].p[arr].lane(j)) + " want " + std::to_string(e));
      }
    }
    for (int j = 0; j < L; ++j) {
      ++vc.lane_checks;
      if (accs[arr].lane(j) != acc[j])
        miss("array " + std::to_string(arr) + " accumulator lane " + std::to_string(j));
    }
  }
}

}  // namespace

VerifyReport verify_full_path(const VerifyOptions& opt) {
  VerifyReport rep;
  std::mt19937_64 rng(opt.seed);
  for (Variant v : {Variant::TwoSA, Variant::OneDA}) {
    // Exhaustive 2-bit: every (I1..I4) combination the variant can consume,
    // with the 16 (w1, w2) combinations spread over the lanes and rotated so
    // each combination visits every lane.
    for (bool sg : {true, false}) {
      VerifyCase vc;
      vc.label = to_string(v) + " 2-bit " + (sg ? "signed" : "unsigned") + " exhaustive";
      const int lo = sg ? -2 : 0;
      const int arrays = info(v).dummy_arrays;
      const int combos = arrays == 2 ? 256 : 16;
      Job job;
      for (int c = 0; c < combos; ++c) {
        for (int rot = 0; rot < 20; rot += 4) {
          std::vector<std::int64_t> w1(20), w2(20);
          for (int j = 0; j < 20; ++j) {
            const int k = (j + rot) % 16;
            w1[j] = k / 4 - 2;
            w2[j] = k % 4 - 2;
          }
          job.w1.push_back(w1);
          job.w2.push_back(w2);
          job.in.push_back({lo + (c & 3), lo + ((c >> 2) & 3), lo + ((c >> 4) & 3), lo + ((c >> 6) & 3)});
          if (job.w1.size() == 8) {  // 8 MAC2s = max_dot 16
            run_job(v, Precision::Int2, sg, job, opt, vc);
            job = Job{};
          }
        }
      }
      if (!job.w1.empty()) run_job(v, Precision::Int2, sg, job, opt, vc);
      rep.cases.push_back(vc);
    }
    for (Precision p : {Precision::Int4, Precision::Int8}) {
      VerifyCase vc;
      vc.label = to_string(v) + " " + to_string(p) + " random";
      const int n = bits(p), L = info(p).lanes;
      const std::uint64_t batch = 128;
      for (std::uint64_t done = 0; done < opt.trials;) {
        const bool sg = rng() & 1;
        Job job;
        const std::uint64_t k = std::min(batch, opt.trials - done);
        for (std::uint64_t q = 0; q < k; ++q) {
          std::vector<std::int64_t> w1(L), w2(L);
          for (int j = 0; j < L; ++j) {
            w1[j] = static_cast<std::int64_t>(rng() % (1u << n)) - (1 << (n - 1));
            w2[j] = static_cast<std::int64_t>(rng() % (1u << n)) - (1 << (n - 1));
          }
          std::array<std::int64_t, 4> in{};
          for (auto& x : in) {
            x = static_cast<std::int64_t>(rng() % (1u << n));
            if (sg) x -= 1 << (n - 1);
          }
          job.w1.push_back(w1);
          job.w2.push_back(w2);
          job.in.push_back(in);
        }
        run_job(v, p, sg, job, opt, vc);
        done += k;
      }
      rep.cases.push_back(vc);
    }
  }
  return rep;
}

}  // namespace bramac
