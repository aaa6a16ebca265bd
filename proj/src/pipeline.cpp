#include "rvp/pipeline.hpp"

#include <cassert>
#include <cstdio>
#include <ostream>

namespace rvp {

uint32_t next_pc(const NextPcCandidates& c, const NextPcSignals& s) {
  if (s.w_bmis) return c.pc_true;
  if (s.w_stall) return c.hold;
  if (s.w_btkn) return c.btb_target;
  return c.pc_plus_4;
}

bool detect_load_use(const IfDecode& consumer, const DecodedInstr& producer) {
  if (!producer.attrs.is_load || producer.rd == 0) return false;
  return consumer.rs1 == producer.rd || consumer.rs2 == producer.rd;
}

uint32_t forward_operand(uint8_t rs, uint32_t regfile_value,
                         const FwdSource& ma, const FwdSource& wb) {
  if (rs == 0) return 0;
  if (ma.valid && ma.writes_rd && ma.rd == rs) {
    assert(!ma.is_load && "load-use pair must have stalled");
    if (!ma.is_load) return ma.value;
  }
  if (wb.valid && wb.writes_rd && wb.rd == rs) return wb.value;
  return regfile_value;
}

Machine::Machine(const SimConfig& cfg, MemSystem mem, uint32_t entry_pc)
    : cfg_(cfg), mem_(std::move(mem)), pred_(cfg.predictor_mode), r_pc_(entry_pc) {}

uint32_t Machine::run_alu(AluOp op, uint32_t a, uint32_t b) const {
  return cfg_.alu_impl == AluImpl::Mux ? alu_mux(a, b, op)
                                       : alu_onehot(a, b, alu_onehot_sel(op));
}

uint32_t Machine::extend_load(uint32_t word, LoadOp op, unsigned offset) const {
  return cfg_.extend_impl == ExtendImpl::Mux
             ? load_extend_mux(word, LoadExtendSelect{op, uint8_t(offset)})
             : load_extend_onehot(word, load_extend_onehot_sel(op, offset));
}

namespace {

struct AluInput {
  uint32_t a;
  uint32_t b;
  AluOp op;
  bool used;
};

AluInput alu_input_for(const DecodedInstr& d, uint32_t pc, uint32_t rs1v, uint32_t rs2v) {
  switch (d.kind) {
    case Op::Lui: return {0, d.imm, AluOp::Add, true};
    case Op::Auipc: return {pc, d.imm, AluOp::Add, true};
    case Op::Lb: case Op::Lh: case Op::Lw: case Op::Lbu: case Op::Lhu:
    case Op::Sb: case Op::Sh: case Op::Sw:
      return {rs1v, d.imm, AluOp::Add, true};  // effective address
    case Op::Addi: return {rs1v, d.imm, AluOp::Add, true};
    case Op::Slti: return {rs1v, d.imm, AluOp::Slt, true};
    case Op::Sltiu: return {rs1v, d.imm, AluOp::Sltu, true};
    case Op::Xori: return {rs1v, d.imm, AluOp::Xor, true};
    case Op::Ori: return {rs1v, d.imm, AluOp::Or, true};
    case Op::Andi: return {rs1v, d.imm, AluOp::And, true};
    case Op::Slli: return {rs1v, d.imm, AluOp::Sll, true};
    case Op::Srli: return {rs1v, d.imm, AluOp::Srl, true};
    case Op::Srai: return {rs1v, d.imm, AluOp::Sra, true};
    case Op::Add: return {rs1v, rs2v, AluOp::Add, true};
    case Op::Sub: return {rs1v, rs2v, AluOp::Sub, true};
    case Op::Sll: return {rs1v, rs2v, AluOp::Sll, true};
    case Op::Slt: return {rs1v, rs2v, AluOp::Slt, true};
    case Op::Sltu: return {rs1v, rs2v, AluOp::Sltu, true};
    case Op::Xor: return {rs1v, rs2v, AluOp::Xor, true};
    case Op::Srl: return {rs1v, rs2v, AluOp::Srl, true};
    case Op::Sra: return {rs1v, rs2v, AluOp::Sra, true};
    case Op::Or: return {rs1v, rs2v, AluOp::Or, true};
    case Op::And: return {rs1v, rs2v, AluOp::And, true};
    default: return {0, 0, AluOp::Add, false};  // jumps, branches, fence, halts
  }
}

unsigned access_width(Op kind) {
  switch (kind) {
    case Op::Lb: case Op::Lbu: case Op::Sb: return 1;
    case Op::Lh: case Op::Lhu: case Op::Sh: return 2;
    default: return 4;
  }
}

}  // namespace

ExMaLatch Machine::compute_ex(const IdExLatch& x) const {
  ExMaLatch o;
  o.valid = true;
  o.pc = x.pc;
  o.instr = x.instr;
  o.pred = x.pred;
  o.fetch_bhr = x.fetch_bhr;
  o.fetch_cycle = x.fetch_cycle;
  o.fetch_fault = x.fetch_fault;
  o.fault_kind = x.fault_kind;
  if (x.fetch_fault) return o;  // garbage word; nothing to execute

  const DecodedInstr& d = x.instr;

  const FwdSource ma{exma_.valid && !exma_.fetch_fault, exma_.instr.attrs.writes_rd,
                     exma_.instr.attrs.is_load, exma_.instr.rd, exma_.result};
  const FwdSource wb{mawb_.valid && !mawb_.fetch_fault, mawb_.instr.attrs.writes_rd,
                     false, mawb_.instr.rd, mawb_.wb_value};

  uint32_t rs1v = x.rs1_val;
  uint32_t rs2v = x.rs2_val;
  if (!cfg_.debug_no_forwarding) {
    if (d.attrs.reads_rs1) rs1v = forward_operand(d.rs1, x.rs1_val, ma, wb);
    if (d.attrs.reads_rs2) rs2v = forward_operand(d.rs2, x.rs2_val, ma, wb);
  }

  if (d.is_control_transfer()) {
    const BranchOutcome bo = resolve_branch(d, rs1v, rs2v, x.pc);
    o.taken = bo.taken;
    o.taken_target = bo.target;
    if (d.attrs.is_jump) o.result = x.pc + 4;  // link value
  } else {
    const AluInput in = alu_input_for(d, x.pc, rs1v, rs2v);
    if (in.used) o.result = run_alu(in.op, in.a, in.b);
  }
  if (d.attrs.is_store) o.store_data = rs2v;
  return o;
}

void Machine::emit_trace(uint32_t fetch_pc, const CycleSignals& sig) const {
  if (!trace_out) return;
  auto stage = [](bool valid, uint32_t pc, char* buf) {
    if (valid) std::snprintf(buf, 12, "%08x", pc);
    else std::snprintf(buf, 12, "-");
  };
  char f[12], i[12], e[12], m[12], w[12];
  std::snprintf(f, sizeof(f), "%08x", fetch_pc);
  stage(ifid_.valid, ifid_.pc, i);
  stage(idex_.valid, idex_.pc, e);
  stage(exma_.valid, exma_.pc, m);
  stage(mawb_.valid, mawb_.pc, w);
  char line[128];
  std::snprintf(line, sizeof(line), "%llu %s %s %s %s %s %d %d %d\n",
                static_cast<unsigned long long>(cycle_), f, i, e, m, w,
                sig.bmis ? 1 : 0, sig.stall ? 1 : 0, sig.btkn ? 1 : 0);
  *trace_out << line;
}

void Machine::step_cycle() {
  assert(!halted_);
  ++cycle_;
  stats_.cycles = cycle_;
  if (trace_out && cycle_ == 1) *trace_out << "# cycle if id ex ma wb bmis stall btkn\n";

  // Wb: retire. The register write lands before Id reads the file this
  // cycle, which is what removes the need for a third forwarding path.
  if (mawb_.valid) {
    if (mawb_.fetch_fault)
      throw SimFault(mawb_.fault_kind, mawb_.pc, mawb_.pc, cycle_);
    if (mawb_.instr.attrs.writes_rd && mawb_.instr.rd != 0)
      regs_[mawb_.instr.rd] = mawb_.wb_value;
    ++stats_.retired;
    if (commit_sink) {
      CommitRecord rec;
      rec.pc = mawb_.pc;
      rec.raw = mawb_.instr.raw;
      rec.regs_after = regs_;
      commit_sink(rec);
    }
    if (mawb_.instr.halts()) {
      halted_ = true;
      stats_.halted_at_cycle = cycle_;
    }
  }

  // Ma stage, combinational part: the branch was resolved in Ex and latched,
  // so the misprediction check is pure latch inspection.
  bool w_bmis = false;
  bool drain = false;  // halting instruction leaving Ma; flushes but is not a miss
  uint32_t redirect_pc = 0;
  uint32_t ma_actual_next = 0;
  bool ma_checked = exma_.valid && !exma_.fetch_fault;
  if (ma_checked) {
    const uint32_t predicted_next = (exma_.pred.valid && exma_.pred.taken)
                                        ? exma_.pred.target
                                        : exma_.pc + 4;
    ma_actual_next = exma_.taken ? exma_.taken_target : exma_.pc + 4;
    if (ma_actual_next != predicted_next) {
      w_bmis = true;
      redirect_pc = ma_actual_next;
      assert(exma_.instr.is_control_transfer() &&
             "only control transfers can carry a taken prediction");
    }
    if (exma_.instr.halts()) {
      drain = true;
      if (!w_bmis) redirect_pc = exma_.pc + 4;  // parked fetch, never commits
    }
  }
  const bool w_redirect = w_bmis || drain;

  // If + preIf: predict for this cycle's fetch. Table reads happen before
  // this cycle's resolution-time writes (read-first port semantics).
  const uint32_t fetch_pc = r_pc_;
  const auto fetched = mem_.fetch(fetch_pc);
  Prediction pred;
  switch (cfg_.predictor_mode) {
    case PredictorMode::None:
      pred.valid = true;  // always fall-through
      break;
    case PredictorMode::Single:
      pred = pred_.predict_single(fetch_pc);
      break;
    case PredictorMode::Pipelined:
      pred = pred_.predict_pipelined(fetch_pc);
      break;
  }
  const bool w_btkn = pred.valid && pred.taken;
  const uint32_t fetch_bhr = pred_.bhr();

  // preIf for the next cycle: on a redirect the staging restarts from the
  // corrected pc, so the first post-redirect fetch sees an invalid
  // prediction. BTB read precedes this cycle's BTB write.
  if (cfg_.predictor_mode == PredictorMode::Pipelined)
    pred_.prestage(w_bmis ? redirect_pc : r_pc_);

  // Ma stage, effects: memory access, predictor update, statistics.
  MaWbLatch mawb_next;
  if (exma_.valid) {
    mawb_next.valid = true;
    mawb_next.pc = exma_.pc;
    mawb_next.instr = exma_.instr;
    mawb_next.wb_value = exma_.result;
    mawb_next.fetch_fault = exma_.fetch_fault;
    mawb_next.fault_kind = exma_.fault_kind;
  }
  if (ma_checked) {
    const DecodedInstr& mi = exma_.instr;
    try {
      if (mi.attrs.is_load) {
        const uint32_t addr = exma_.result;
        const uint32_t word = mem_.load_word(addr, access_width(mi.kind));
        mawb_next.wb_value = extend_load(word, load_op_of(mi.kind), addr & 3);
      } else if (mi.attrs.is_store) {
        mem_.store(exma_.result, access_width(mi.kind), exma_.store_data);
      }
    } catch (SimFault& f) {
      f.pc = exma_.pc;
      f.cycle = cycle_;
      throw;
    }

    if (mi.is_control_transfer()) {
      if (w_bmis) {
        ++stats_.pred_misses;
        ++stats_.flushes;
      } else {
        ++stats_.pred_hits;
      }
      if (cfg_.predictor_mode != PredictorMode::None) {
        if (mi.attrs.is_cond_branch)
          pred_.update_branch(exma_.pc, exma_.taken, exma_.taken_target,
                              exma_.pred.pht_index);
        else if (mi.kind == Op::Jal)
          pred_.update_jump(exma_.pc, exma_.taken_target);
        // JALR targets are register-indirect and never enter the BTB.
        if (w_bmis) {
          uint32_t h = exma_.fetch_bhr;
          if (mi.attrs.is_cond_branch) h = Gshare::shift_history(h, exma_.taken);
          pred_.rewrite_history(h);
        }
      }
      if (branch_log) {
        branch_log->push_back(BranchEvent{
            exma_.pc, mi.kind, exma_.pred.valid, exma_.pred.taken,
            exma_.pred.target, exma_.pred.pht_index, exma_.taken,
            exma_.taken_target, exma_.fetch_bhr, exma_.fetch_cycle, cycle_,
            w_bmis});
      }
    }
  }

  // Ex.
  ExMaLatch exma_next;
  if (idex_.valid) exma_next = compute_ex(idex_);

  // Id: full decode, register read (after this cycle's write-back), and the
  // baseline-placement hazard check against the load one stage ahead.
  IdExLatch idex_next;
  bool stall_raw = false;
  if (ifid_.valid) {
    const DecodedInstr di = decode(ifid_.raw);
    idex_next.valid = true;
    idex_next.pc = ifid_.pc;
    idex_next.instr = di;
    idex_next.rs1_val = regs_[di.rs1];
    idex_next.rs2_val = regs_[di.rs2];
    idex_next.fetch_fault = ifid_.fetch_fault;
    idex_next.fault_kind = ifid_.fault_kind;
    idex_next.pred = ifid_.pred;
    idex_next.fetch_bhr = ifid_.fetch_bhr;
    idex_next.fetch_cycle = ifid_.fetch_cycle;

    if (cfg_.predictor_mode == PredictorMode::Pipelined) {
      // Detection already happened in the If stage and travelled with the
      // load through the IdEx latch.
      stall_raw = idex_.valid && idex_.early_load_use;
    } else if (idex_.valid) {
      stall_raw = detect_load_use(decode_if(ifid_.raw), idex_.instr);
    }

    // If-stage early detection for the optimized fetch unit: compare this
    // cycle's fetch word against the instruction now leaving Id.
    if (cfg_.predictor_mode == PredictorMode::Pipelined && fetched)
      idex_next.early_load_use = detect_load_use(decode_if(*fetched), di);
  }

  const bool w_stall = !w_redirect && stall_raw;
  if (w_stall) ++stats_.load_use_stalls;

  // Speculative history shift, only for a fetch that actually advances and
  // that the BTB identified as a conditional branch.
  const bool advances = !w_redirect && !w_stall;
  if (advances && cfg_.predictor_mode != PredictorMode::None && pred.valid &&
      pred.btb_branch_hit)
    pred_.speculate_history(pred.taken);

  // If output.
  IfIdLatch ifid_next;
  ifid_next.valid = true;
  ifid_next.pc = fetch_pc;
  ifid_next.raw = fetched.value_or(0);
  ifid_next.fetch_fault = !fetched.has_value();
  if (!fetched) ifid_next.fault_kind = mem_.fetch_fault_kind(fetch_pc);
  ifid_next.pred = pred;
  ifid_next.fetch_bhr = fetch_bhr;
  ifid_next.fetch_cycle = cycle_;

  if (advances && fetch_log)
    fetch_log->push_back(FetchEvent{cycle_, fetch_pc, pred.valid, pred.taken, pred.target});

  last_signals_ = CycleSignals{w_bmis, w_stall, w_btkn};
  emit_trace(fetch_pc, last_signals_);

  // Latch update and next pc, redirect beating stall beating prediction.
  const uint32_t npc = next_pc(
      NextPcCandidates{redirect_pc, r_pc_, pred.target, r_pc_ + 4},
      NextPcSignals{w_redirect, w_stall, w_btkn});

  mawb_ = mawb_next;
  if (w_redirect) {
    exma_ = ExMaLatch{};
    idex_ = IdExLatch{};
    ifid_ = IfIdLatch{};
  } else if (w_stall) {
    exma_ = exma_next;
    idex_ = IdExLatch{};  // the bubble
    // ifid_ holds
  } else {
    exma_ = exma_next;
    idex_ = idex_next;
    ifid_ = ifid_next;
  }
  r_pc_ = npc;
}

RunStatus Machine::run_to_halt(uint64_t max_cycles) {
  if (max_cycles == 0) max_cycles = cfg_.max_cycles;
  assert(max_cycles > 0);
  while (!halted_) {
    if (cycle_ >= max_cycles) return RunStatus::CycleBudget;
    step_cycle();
  }
  return RunStatus::Halted;
}

}  // namespace rvp
