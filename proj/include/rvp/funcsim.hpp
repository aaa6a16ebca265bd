#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rvp/isa.hpp"
#include "rvp/mem.hpp"

namespace rvp {

struct ArchState {
  uint32_t pc = 0;
  std::array<uint32_t, 32> regs{};  // regs[0] stays 0
};

// One retired instruction: pc, raw word, and the full register file after
// write-back. The unit of lockstep comparison.
struct CommitRecord {
  uint32_t pc = 0;
  uint32_t raw = 0;
  std::array<uint32_t, 32> regs_after{};
};

// Text form: hex pc, hex raw word, 32 hex register values, space-separated.
// Bit-exact; the lockstep comparator and golden files depend on it.
std::string format_commit(const CommitRecord& rec);

using CommitSink = std::function<void(const CommitRecord&)>;

struct FuncRunResult {
  uint64_t retired = 0;     // committed records, including the halting one
  bool halted = false;      // false: step budget exhausted
};

// The instruction-level reference model. No cycles, one instruction per
// step. Execution is written directly against the ISA semantics and shares
// nothing with the pipeline's datapath units, so the two can check each
// other.
class FuncSim {
 public:
  FuncSim(MemSystem mem, uint32_t entry_pc = 0);

  // Executes exactly one instruction. Throws SimFault on memory/fetch
  // violations. Returns true when the instruction halts the machine
  // (ECALL/EBREAK/illegal); the halting instruction still commits.
  bool step(CommitRecord& out);

  FuncRunResult run(uint64_t max_steps, const CommitSink& sink = nullptr);
  FuncRunResult run_collect(uint64_t max_steps, std::vector<CommitRecord>& log);

  const ArchState& state() const { return state_; }
  MemSystem& mem() { return mem_; }
  const MemSystem& mem() const { return mem_; }
  bool halted() const { return halted_; }

 private:
  MemSystem mem_;
  ArchState state_;
  bool halted_ = false;

  void write_reg(unsigned rd, uint32_t value);
};

}  // namespace rvp
