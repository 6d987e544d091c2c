// SPDX-License-Identifier: Apache-2.0
#include "bramac/efsm.hpp"

#include <ostream>

namespace bramac {

std::string to_string(MicroOp op) {
  switch (op) {
    case MicroOp::SumInit: return "SumInit";
    case MicroOp::Invert: return "Invert";
    case MicroOp::AddShift: return "AddShift";
    case MicroOp::AddLast: return "AddLast";
    case MicroOp::Accumulate: return "Accumulate";
  }
  return "?";
}

std::vector<Step> mac2_program(Precision p, bool signed_inputs) {
  const int n = bits(p);
  std::vector<Step> prog;
  prog.push_back({MicroOp::SumInit, -1});
  if (signed_inputs) {
    prog.push_back({MicroOp::Invert, n - 1});
    prog.push_back({MicroOp::AddShift, n - 1, true, true});
  } else {
    prog.push_back({MicroOp::AddShift, n - 1});
  }
  for (int b = n - 2; b >= 1; --b) prog.push_back({MicroOp::AddShift, b});
  prog.push_back({MicroOp::AddLast, 0});
  prog.push_back({MicroOp::Accumulate, -1});
  return prog;
}

void write_trace_csv(std::ostream& out, const std::vector<CycleRecord>& trace) {
  out << "# schema: bramac.trace.v1\n";
  out << "cycle,phase,portA_busy,portB_busy,row_writes\n";
  for (const auto& r : trace)
    out << r.cycle << ',' << r.phase << ',' << int(r.port_a_busy) << ',' << int(r.port_b_busy) << ','
        << row_mask_string(r.row_writes) << '\n';
}

BramacBlock::BramacBlock(Variant v, Precision p) : variant_(v), arrays_(info(v).dummy_arrays, DummyArray(p)) {
  mem_.set_mode(BramMode::Cim);
}

bool BramacBlock::idle() const {
  return !active() && !staged_w1_ && !armed_ && !launch_pending_ && !pending_;
}

std::optional<std::string> BramacBlock::check(const CimInstruction& x) const {
  if (x.copy && x.done) return "copy and done in one instruction";
  if (x.done && (x.start || x.reset)) return "done cannot be combined with start or reset";
  if (x.col < 0 || x.col > 3 || x.row < 0 || x.row >= kMainRows || x.row2 < 0 || x.row2 >= kMainRows)
    return "address out of range";
  const Precision cur = arrays_[0].precision();

  if (variant_ == Variant::TwoSA) {
    const bool wfree = !active() || program_[pc_].op == MicroOp::AddLast || program_[pc_].op == MicroOp::Accumulate;
    const bool quiet = !active() && !staged_w1_ && !armed_ && !launch_pending_;
    if (x.done && !quiet) return "accumulator readout while a MAC2 is in flight";
    if (x.reset && !quiet) return "reset while a MAC2 is in flight";
    if (x.prec != cur && !x.reset && (x.copy || x.start)) return "precision change without reset";
    if (x.copy) {
      if (!wfree) return "weight rows still in use by the running MAC2";
      if (!x.w2) {
        if (x.start) return "start must accompany the W2 copy";
        if (armed_ || launch_pending_) return "previous weight pair not yet started";
      } else {
        if (!staged_w1_) return "W2 copy without a preceding W1 copy";
        if (x.prec != staged_.prec || x.unsigned_inputs != staged_.unsigned_inputs)
          return "W2 copy precision/type differs from W1 copy";
      }
    } else if (x.start) {
      if (!armed_) return "start without copied weights";
      if (active()) return "start while a MAC2 is running";
    }
    return std::nullopt;
  }

  const bool quiet = !active() && !pending_ && !armed_;
  if (x.done && !quiet) return "accumulator readout while a MAC2 is in flight";
  if (x.reset && !quiet) return "reset while a MAC2 is in flight";
  if (x.prec != cur && !x.reset && (x.copy || x.start)) return "precision change without reset";
  if (x.copy) {
    if (pending_) return "previous weights not yet copied into the dummy array";
    if (active() && remaining() > 2) return "dummy array busy beyond this cycle";
  } else if (x.start) {
    if (!armed_ || active() || pending_) return "start without copied weights";
  }
  return std::nullopt;
}

void BramacBlock::apply_reset(const CimInstruction& x) {
  for (auto& a : arrays_) {
    if (a.precision() != x.prec) a.set_precision(x.prec);
    a.clear_acc();
  }
}

void BramacBlock::launch(const Staged& s) {
  program_ = mac2_program(s.prec, !s.unsigned_inputs);
  pc_ = 0;
  running_ = s;
  mem_.clear_watch();
  for (int w : s.words)
    if (w >= 0) mem_.watch(w);
}

void BramacBlock::execute_step(RowMask& writes) {
  const Step& st = program_[pc_];
  for (int k = 0; k < arrays(); ++k) {
    DummyArray& a = arrays_[k];
    const Inputs in = running_.in[k];
    const bool b1 = st.bit >= 0 && ((in.a >> st.bit) & 1);
    const bool b2 = st.bit >= 0 && ((in.b >> st.bit) & 1);
    switch (st.op) {
      case MicroOp::SumInit: a.sum_weights_init_p(); break;
      case MicroOp::Invert: a.invert_selected(b1, b2); break;
      case MicroOp::AddShift: a.add_psum(b1, b2, st.use_inv, true, st.carry_in); break;
      case MicroOp::AddLast: a.add_psum(b1, b2, false, false, false); break;
      case MicroOp::Accumulate: a.accumulate(); break;
    }
    writes |= a.cycle_writes();
  }
  if (st.op == MicroOp::AddLast) {
    Mac2Result r{cycle_ + 1, arrays(), {}};
    for (int k = 0; k < arrays(); ++k) r.p[k] = arrays_[k].row(DummyRow::P);
    results_.push_back(r);
  }
  ++pc_;
  if (!active()) {
    program_.clear();
    pc_ = 0;
    mem_.clear_watch();
  }
}

CycleOutput BramacBlock::tick(const CycleInput& in) {
  CycleOutput out{};
  if (in.instruction && in.port_a) throw std::invalid_argument("port A carries either an instruction or data");
  const CimInstruction* x = in.instruction ? &*in.instruction : nullptr;
  if (x) {
    if (auto why = check(*x)) throw ScheduleViolation("cycle " + std::to_string(cycle_ + 1) + ": " + *why);
  }
  const bool ports_taken = x && (x->copy || x->done);
  if (ports_taken && in.port_b) throw std::logic_error("port B access on a cycle the eFSM owns both ports");

  mem_.note_cycle(cycle_ + 1);
  out.ports = mem_.access(in.port_a, in.port_b);

  RowMask writes = 0;
  std::string phase;
  auto add_phase = [&](const std::string& s) { phase += phase.empty() ? s : "+" + s; };

  const int ticks = info(variant_).clock_ratio;
  for (int t = 0; t < ticks; ++t) {
    for (auto& a : arrays_) a.begin_cycle();
    if (active()) {
      add_phase(to_string(program_[pc_].op));
      execute_step(writes);
    } else if (variant_ == Variant::OneDA && pending_ && pending_->loaded_cycle < cycle_) {
      DummyArray& a = arrays_[0];
      a.copy_weight(pending_->w1, DummyRow::W1);
      a.copy_weight(pending_->w2, DummyRow::W2);
      writes |= a.cycle_writes();
      add_phase("Copy");
      if (pending_->launch) {
        launch(pending_->s);
      } else {
        armed_ = true;
        staged_ = pending_->s;
      }
      pending_.reset();
    } else if (ticks > 1 || !x) {
      add_phase("Idle");
    }
  }

  // Instruction effects share the array cycle with the step above (2SA) or
  // the second tick (1DA), so the port counters are not reset here.
  if (x) {
    if (x->reset) apply_reset(*x);
    if (variant_ == Variant::TwoSA) {
      if (x->copy) {
        const PackedWord w = mem_.read40({x->row, x->col});
        for (auto& a : arrays_) a.copy_weight(w, x->w2 ? DummyRow::W2 : DummyRow::W1);
        const int slot = x->w2 ? 1 : 0;
        if (!x->w2) {
          staged_ = Staged{x->prec, x->unsigned_inputs, {}, {-1, -1}};
          staged_w1_ = true;
        } else {
          staged_w1_ = false;
          armed_ = true;
        }
        staged_.in[slot] = {x->input_a, x->input_b};
        staged_.words[slot] = CimAddress{x->row, x->col}.word_index();
        add_phase(x->w2 ? "CopyW2" : "CopyW1");
      }
      if (x->start) {
        armed_ = false;
        launch_pending_ = true;
      }
    } else if (x->copy) {
      Pending pd{mem_.read40({x->row, x->col}), mem_.read40({x->row2, x->col}), {}, x->start, cycle_};
      pd.s = Staged{x->prec, x->unsigned_inputs, {}, {CimAddress{x->row, x->col}.word_index(),
                                                      CimAddress{x->row2, x->col}.word_index()}};
      pd.s.in[0] = {x->input_a, x->input_b};
      pending_ = pd;
      add_phase("Read");
    } else if (x->start) {
      armed_ = false;
      launch(staged_);
    }
    if (x->done) {
      const int k = (variant_ == Variant::TwoSA && x->w2) ? 1 : 0;
      out.acc_chunk = arrays_[k].read_acc_chunk(x->col);
      add_phase("Readout");
    }
    if (x->reset && phase.empty()) add_phase("Reset");
    for (auto& a : arrays_) writes |= a.cycle_writes();
  }

  if (variant_ == Variant::TwoSA && launch_pending_ && !active()) {
    launch_pending_ = false;
    launch(staged_);
  }

  ++cycle_;
  if (phase.empty()) phase = "Idle";
  // Busy flags mark eFSM port occupancy, i.e. copy and readout cycles.
  out.record = {cycle_, phase, ports_taken, ports_taken, writes};
  if (tracing_) trace_.push_back(out.record);
  return out;
}

CycleOutput BramacBlock::tick_ports(const std::optional<PortOp>& a, const std::optional<PortOp>& b) {
  CycleInput in;
  if (a && mem_.mode() == BramMode::Cim && is_cim_trigger(a->addr)) {
    if (!a->write) throw std::invalid_argument("read from the CIM trigger address");
    in.instruction = decode(*a->write, variant_);
  } else {
    in.port_a = a;
  }
  in.port_b = b;
  if (mem_.mode() == BramMode::Mem) {
    CycleOutput out{};
    out.ports = mem_.access(a, b);
    ++cycle_;
    out.record = {cycle_, "Mem", false, false, 0};
    return out;
  }
  return tick(in);
}

// ---- drivers ----

std::vector<CimInstruction> mac2_instructions(Variant v, std::span<const Mac2Request> reqs, Precision p,
                                              bool signed_inputs, bool reset_first) {
  std::vector<CimInstruction> out;
  bool first = true;
  for (const Mac2Request& r : reqs) {
    CimInstruction base;
    base.prec = p;
    base.unsigned_inputs = !signed_inputs;
    base.copy = true;
    if (v == Variant::TwoSA) {
      CimInstruction a = base, b = base;
      a.reset = first && reset_first;
      a.row = r.w1.row, a.col = r.w1.col, a.input_a = r.in0[0], a.input_b = r.in0[1];
      b.w2 = true, b.start = true;
      b.row = r.w2.row, b.col = r.w2.col, b.input_a = r.in1[0], b.input_b = r.in1[1];
      out.push_back(a);
      out.push_back(b);
    } else {
      if (r.w1.col != r.w2.col) throw std::invalid_argument("1DA weight words must share bramCol");
      CimInstruction a = base;
      a.reset = first && reset_first;
      a.start = true;
      a.row = r.w1.row, a.row2 = r.w2.row, a.col = r.w1.col;
      a.input_a = r.in0[0], a.input_b = r.in0[1];
      out.push_back(a);
    }
    first = false;
  }
  return out;
}

std::vector<CimInstruction> readout_instructions(Variant v, Precision p) {
  std::vector<CimInstruction> out;
  for (int k = 0; k < info(v).dummy_arrays; ++k)
    for (int c = 0; c < 4; ++c) {
      CimInstruction x;
      x.prec = p;
      x.done = true;
      x.w2 = k == 1;
      x.col = c;
      out.push_back(x);
    }
  return out;
}

StreamResult run_instructions(BramacBlock& block, const std::vector<CimInstruction>& program) {
  StreamResult res;
  const std::uint64_t start = block.cycle();
  const std::size_t first_result = block.results().size();
  block.clear_trace();
  std::size_t next = 0;
  while (next < program.size() || !block.idle()) {
    CycleInput in;
    if (next < program.size() && block.can_issue(program[next])) in.instruction = program[next++];
    const CycleOutput o = block.tick(in);
    if (o.acc_chunk) res.readout.push_back(*o.acc_chunk);
    if (o.record.port_a_busy || o.record.port_b_busy) ++res.busy_cycles;
    if (block.cycle() - start > 100000000ull) throw std::runtime_error("instruction stream did not drain");
  }
  res.total_cycles = block.cycle() - start;
  res.free_cycles = res.total_cycles - res.busy_cycles;
  res.trace = block.trace();
  res.mac2s.assign(block.results().begin() + static_cast<std::ptrdiff_t>(first_result), block.results().end());
  return res;
}

StreamResult run_mac2_stream(BramacBlock& block, std::span<const Mac2Request> reqs, Precision p, bool signed_inputs,
                             bool readout) {
  auto prog = mac2_instructions(block.variant(), reqs, p, signed_inputs, true);
  if (readout) {
    auto ro = readout_instructions(block.variant(), p);
    prog.insert(prog.end(), ro.begin(), ro.end());
  }
  return run_instructions(block, prog);
}

std::vector<LaneVector> accumulators_from_chunks(const std::vector<PackedWord>& chunks, Precision p) {
  if (chunks.size() % 4 != 0) throw std::invalid_argument("accumulator readout needs 4 chunks per array");
  std::vector<LaneVector> out;
  for (std::size_t k = 0; k < chunks.size(); k += 4) {
    LaneVector v(p);
    for (int c = 0; c < 4; ++c) v.set_field(c * kWordBits, kWordBits, chunks[k + c].bits);
    out.push_back(v);
  }
  return out;
}

std::pair<CimAddress, CimAddress> pair_addresses(int base_word, int q) {
  const int w1 = base_word + q % 4 + 8 * (q / 4);
  return {CimAddress::from_index(w1), CimAddress::from_index(w1 + 4)};
}

DotProductResult run_dot_product(BramacBlock& block, std::span<const std::int64_t> matrix, int m, int n,
                                 const std::vector<std::vector<std::int64_t>>& vectors, Precision p,
                                 bool signed_inputs) {
  const PrecisionInfo pi = info(p);
  if (m < 1 || m > pi.lanes) throw std::invalid_argument("dot-product tile rows must be in [1, L]");
  if (n < 1) throw std::invalid_argument("empty dot product");
  if (n > pi.max_dot) throw std::length_error("dot length exceeds max_dot without readout");
  if (static_cast<int>(matrix.size()) != m * n) throw std::invalid_argument("matrix size mismatch");
  if (vectors.empty() || static_cast<int>(vectors.size()) > block.arrays())
    throw std::invalid_argument("vector count must be 1.." + std::to_string(block.arrays()));
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("vector length mismatch");
  const int pairs = (n + 1) / 2;
  if (pairs > 256) throw std::length_error("tile does not fit the main array");

  auto column = [&](int j) {
    PackedWord w;
    if (j < n)
      for (int i = 0; i < m; ++i) w.set_element(i, p, matrix[static_cast<std::size_t>(i) * n + j]);
    return w;
  };
  auto input = [&](int vec, int j) -> std::uint32_t {
    if (vec >= static_cast<int>(vectors.size()) || j >= n) return 0;
    const std::int64_t v = vectors[vec][j];
    if (!fits(v, pi.operand_bits, signed_inputs)) throw std::out_of_range("input out of range");
    return static_cast<std::uint32_t>(to_raw(v, pi.operand_bits));
  };

  std::vector<Mac2Request> reqs;
  for (int q = 0; q < pairs; ++q) {
    auto [a1, a2] = pair_addresses(0, q);
    block.memory().write40(a1, column(2 * q));
    block.memory().write40(a2, column(2 * q + 1));
    Mac2Request r{a1, a2};
    r.in0 = {input(0, 2 * q), input(0, 2 * q + 1)};
    r.in1 = {input(1, 2 * q), input(1, 2 * q + 1)};
    reqs.push_back(r);
  }

  DotProductResult res;
  res.stream = run_mac2_stream(block, reqs, p, signed_inputs, true);
  res.total_cycles = res.stream.total_cycles;
  const auto accs = accumulators_from_chunks(res.stream.readout, p);
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    std::vector<std::int64_t> o(m);
    for (int i = 0; i < m; ++i) o[i] = accs[k].lane(i);
    res.outputs.push_back(o);
  }
  return res;
}

}  // namespace bramac
