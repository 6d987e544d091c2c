// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bramac/bram_block.hpp"
#include "bramac/dummy_array.hpp"
#include "bramac/instruction.hpp"

namespace bramac {

class ScheduleViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class MicroOp : std::uint8_t { SumInit, Invert, AddShift, AddLast, Accumulate };

struct Step {
  MicroOp op;
  int bit;  // input bit consumed (-1 for SumInit/Accumulate)
  bool use_inv = false;
  bool carry_in = false;
};

std::string to_string(MicroOp op);
std::vector<Step> mac2_program(Precision p, bool signed_inputs);

struct CycleRecord {
  std::uint64_t cycle;  // 1-based main-array cycle
  std::string phase;
  bool port_a_busy;
  bool port_b_busy;
  RowMask row_writes;
};

void write_trace_csv(std::ostream& out, const std::vector<CycleRecord>& trace);

struct Mac2Result {
  std::uint64_t cycle;  // cycle in which the final add wrote P
  int arrays;
  std::array<LaneVector, 2> p;
};

struct CycleInput {
  std::optional<CimInstruction> instruction;  // arrives on port A at 0xfff
  std::optional<PortOp> port_a;               // data access, exclusive with instruction
  std::optional<PortOp> port_b;
};

struct CycleOutput {
  std::array<PortResult, 2> ports;
  std::optional<PackedWord> acc_chunk;
  CycleRecord record;
};

// One compute-capable block: main array, eFSM and one (1DA) or two (2SA)
// dummy arrays. tick() advances one main-array cycle.
class BramacBlock {
 public:
  explicit BramacBlock(Variant v, Precision p = Precision::Int8);

  Variant variant() const { return variant_; }
  int arrays() const { return info(variant_).dummy_arrays; }
  MainArray& memory() { return mem_; }
  const MainArray& memory() const { return mem_; }
  DummyArray& dummy(int i) { return arrays_.at(i); }
  const DummyArray& dummy(int i) const { return arrays_.at(i); }

  // Reason the instruction would be rejected this cycle, or nothing.
  std::optional<std::string> check(const CimInstruction& ins) const;
  bool can_issue(const CimInstruction& ins) const { return !check(ins); }
  bool idle() const;

  CycleOutput tick(const CycleInput& in = {});
  // Raw port form: in CIM mode a port-A write to 0xfff is decoded as an instruction.
  CycleOutput tick_ports(const std::optional<PortOp>& a, const std::optional<PortOp>& b);

  std::uint64_t cycle() const { return cycle_; }
  const std::vector<Mac2Result>& results() const { return results_; }
  void clear_results() { results_.clear(); }

  void set_tracing(bool on) { tracing_ = on; }
  const std::vector<CycleRecord>& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }

 private:
  struct Inputs {
    std::uint32_t a = 0, b = 0;
  };
  struct Staged {
    Precision prec = Precision::Int2;
    bool unsigned_inputs = false;
    std::array<Inputs, 2> in{};
    std::array<int, 2> words{-1, -1};
  };
  struct Pending {  // 1DA pipeline register
    PackedWord w1, w2;
    Staged s;
    bool launch;
    std::uint64_t loaded_cycle;
  };

  bool active() const { return pc_ < program_.size(); }
  std::size_t remaining() const { return program_.size() - pc_; }
  void execute_step(RowMask& writes);
  void launch(const Staged& s);
  void apply_reset(const CimInstruction& ins);

  Variant variant_;
  MainArray mem_;
  std::vector<DummyArray> arrays_;

  std::vector<Step> program_;
  std::size_t pc_ = 0;
  Staged running_;

  // 2SA staging
  bool staged_w1_ = false;
  bool armed_ = false;  // both weights copied, waiting for start
  bool launch_pending_ = false;
  Staged staged_;

  // 1DA staging
  std::optional<Pending> pending_;

  std::uint64_t cycle_ = 0;
  std::vector<Mac2Result> results_;
  bool tracing_ = true;
  std::vector<CycleRecord> trace_;
};

// ---- stream drivers ----

struct Mac2Request {
  CimAddress w1, w2;                      // 1DA requires w1.col == w2.col
  std::array<std::uint32_t, 2> in0{};     // raw (I1, I2) for array 0
  std::array<std::uint32_t, 2> in1{};     // raw (I3, I4) for array 1, 2SA only
};

struct StreamResult {
  std::vector<Mac2Result> mac2s;
  std::vector<CycleRecord> trace;
  std::vector<PackedWord> readout;  // accumulator chunks in issue order
  std::uint64_t total_cycles = 0;
  std::uint64_t busy_cycles = 0;
  std::uint64_t free_cycles = 0;
};

std::vector<CimInstruction> mac2_instructions(Variant v, std::span<const Mac2Request> reqs, Precision p,
                                              bool signed_inputs, bool reset_first);
std::vector<CimInstruction> readout_instructions(Variant v, Precision p);

// Issues each instruction at the first cycle it is legal, then runs to idle.
StreamResult run_instructions(BramacBlock& block, const std::vector<CimInstruction>& program);

StreamResult run_mac2_stream(BramacBlock& block, std::span<const Mac2Request> reqs, Precision p, bool signed_inputs,
                             bool readout = false);

// Unpacks the accumulator rows from readout chunks (4 per array).
std::vector<LaneVector> accumulators_from_chunks(const std::vector<PackedWord>& chunks, Precision p);

// Word placement used by the dot-product and GEMV drivers: pair q of a tile
// starting at word `base` lives at column q%4, rows base/4 + 2*(q/4) (+1).
std::pair<CimAddress, CimAddress> pair_addresses(int base_word, int q);

struct DotProductResult {
  std::vector<std::vector<std::int64_t>> outputs;  // per input vector
  std::uint64_t total_cycles = 0;
  StreamResult stream;
};

// matrix is m x n row-major with m <= L. 2SA takes up to two vectors (one per
// dummy array); 1DA takes one.
DotProductResult run_dot_product(BramacBlock& block, std::span<const std::int64_t> matrix, int m, int n,
                                 const std::vector<std::vector<std::int64_t>>& vectors, Precision p,
                                 bool signed_inputs);

}  // namespace bramac
