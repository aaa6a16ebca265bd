#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rvp/config.hpp"
#include "rvp/datapath.hpp"
#include "rvp/funcsim.hpp"
#include "rvp/isa.hpp"
#include "rvp/mem.hpp"
#include "rvp/predictor.hpp"

namespace rvp {

struct RunStats {
  uint64_t cycles = 0;
  uint64_t retired = 0;          // committed instructions, halting one included
  uint64_t pred_hits = 0;        // retired control transfers, resolved correct
  uint64_t pred_misses = 0;
  uint64_t load_use_stalls = 0;
  uint64_t flushes = 0;          // redirects that cost the 3-cycle penalty
  uint64_t halted_at_cycle = 0;  // 0 while running

  double ipc() const { return cycles ? double(retired) / double(cycles) : 0.0; }
};

// Next-PC selection, highest priority first: corrected pc on misprediction,
// hold on stall, BTB target on a valid taken prediction, fall-through.
struct NextPcCandidates {
  uint32_t pc_true;
  uint32_t hold;
  uint32_t btb_target;
  uint32_t pc_plus_4;
};
struct NextPcSignals {
  bool w_bmis = false;
  bool w_stall = false;
  bool w_btkn = false;  // valid taken prediction
};
uint32_t next_pc(const NextPcCandidates& c, const NextPcSignals& s);

// True iff producer is a load whose destination feeds one of the consumer's
// source operands. Unused source fields are zero and never match a nonzero rd.
bool detect_load_use(const IfDecode& consumer, const DecodedInstr& producer);

// Operand forwarding: the Ma-stage result beats the Wb-stage result beats
// the register file. Loads in Ma have nothing to forward yet; the stall
// keeps that case from ever mattering.
struct FwdSource {
  bool valid = false;
  bool writes_rd = false;
  bool is_load = false;
  uint8_t rd = 0;
  uint32_t value = 0;
};
uint32_t forward_operand(uint8_t rs, uint32_t regfile_value,
                         const FwdSource& ma, const FwdSource& wb);

// Inter-stage latches. A latch with valid=false is a bubble and commits
// nothing downstream.
struct IfIdLatch {
  bool valid = false;
  uint32_t pc = 0;
  uint32_t raw = 0;
  bool fetch_fault = false;
  FaultKind fault_kind = FaultKind::FetchOutOfRange;
  Prediction pred;
  uint32_t fetch_bhr = 0;    // history before this fetch's speculative shift
  uint64_t fetch_cycle = 0;
};

struct IdExLatch {
  bool valid = false;
  uint32_t pc = 0;
  DecodedInstr instr;
  uint32_t rs1_val = 0;
  uint32_t rs2_val = 0;
  bool fetch_fault = false;
  FaultKind fault_kind = FaultKind::FetchOutOfRange;
  Prediction pred;
  uint32_t fetch_bhr = 0;
  uint64_t fetch_cycle = 0;
  bool early_load_use = false;  // If-stage detection result, travels with the load
};

struct ExMaLatch {
  bool valid = false;
  uint32_t pc = 0;
  DecodedInstr instr;
  uint32_t result = 0;      // ALU result, link value, or effective address
  uint32_t store_data = 0;
  bool taken = false;       // resolved control-flow outcome
  uint32_t taken_target = 0;
  bool fetch_fault = false;
  FaultKind fault_kind = FaultKind::FetchOutOfRange;
  Prediction pred;
  uint32_t fetch_bhr = 0;
  uint64_t fetch_cycle = 0;
};

struct MaWbLatch {
  bool valid = false;
  uint32_t pc = 0;
  DecodedInstr instr;
  uint32_t wb_value = 0;
  bool fetch_fault = false;
  FaultKind fault_kind = FaultKind::FetchOutOfRange;
};

// Control signals of the last executed cycle, for tests and tracing.
struct CycleSignals {
  bool bmis = false;
  bool stall = false;
  bool btkn = false;
};

// One retired control transfer, as seen at resolution. Feeds the predictor
// oracle and the prediction-semantics tests.
struct BranchEvent {
  uint32_t pc = 0;
  Op kind = Op::Illegal;
  bool pred_valid = false;
  bool pred_taken = false;
  uint32_t pred_target = 0;
  uint32_t pht_index = 0;
  bool taken = false;
  uint32_t target = 0;
  uint32_t fetch_bhr = 0;
  uint64_t fetch_cycle = 0;
  uint64_t resolve_cycle = 0;
  bool mispredict = false;
};

// One fetch that actually advanced into the pipe.
struct FetchEvent {
  uint64_t cycle = 0;
  uint32_t pc = 0;
  bool pred_valid = false;
  bool pred_taken = false;
  uint32_t pred_target = 0;
};

enum class RunStatus { Halted, CycleBudget };

// The five-stage machine. One step_cycle() call advances every stage once.
class Machine {
 public:
  Machine(const SimConfig& cfg, MemSystem mem, uint32_t entry_pc = 0);

  void step_cycle();  // pre: !halted(); throws SimFault with pc and cycle set
  RunStatus run_to_halt(uint64_t max_cycles = 0);  // 0: use cfg.max_cycles

  bool halted() const { return halted_; }
  const RunStats& stats() const { return stats_; }
  const std::array<uint32_t, 32>& regs() const { return regs_; }
  uint32_t pc() const { return r_pc_; }
  const Gshare& predictor() const { return pred_; }
  MemSystem& mem() { return mem_; }
  const MemSystem& mem() const { return mem_; }
  const CycleSignals& last_signals() const { return last_signals_; }

  // Observability hooks; all optional.
  CommitSink commit_sink;
  std::ostream* trace_out = nullptr;
  std::vector<BranchEvent>* branch_log = nullptr;
  std::vector<FetchEvent>* fetch_log = nullptr;

 private:
  SimConfig cfg_;
  MemSystem mem_;
  Gshare pred_;
  std::array<uint32_t, 32> regs_{};
  uint32_t r_pc_;
  IfIdLatch ifid_;
  IdExLatch idex_;
  ExMaLatch exma_;
  MaWbLatch mawb_;
  RunStats stats_;
  CycleSignals last_signals_;
  bool halted_ = false;
  uint64_t cycle_ = 0;

  uint32_t run_alu(AluOp op, uint32_t a, uint32_t b) const;
  uint32_t extend_load(uint32_t word, LoadOp op, unsigned offset) const;
  ExMaLatch compute_ex(const IdExLatch& x) const;
  void emit_trace(uint32_t fetch_pc, const CycleSignals& sig) const;
};

}  // namespace rvp
