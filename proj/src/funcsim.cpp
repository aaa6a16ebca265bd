#include "rvp/funcsim.hpp"

#include <cassert>
#include <cstdio>

namespace rvp {

std::string format_commit(const CommitRecord& rec) {
  std::string out;
  out.reserve(9 * 34);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%08x %08x", rec.pc, rec.raw);
  out += buf;
  for (uint32_t r : rec.regs_after) {
    std::snprintf(buf, sizeof(buf), " %08x", r);
    out += buf;
  }
  return out;
}

FuncSim::FuncSim(MemSystem mem, uint32_t entry_pc) : mem_(std::move(mem)) {
  state_.pc = entry_pc;
}

void FuncSim::write_reg(unsigned rd, uint32_t value) {
  if (rd != 0) state_.regs[rd] = value;
}

bool FuncSim::step(CommitRecord& out) {
  assert(!halted_);
  const uint32_t pc = state_.pc;
  const auto word = mem_.fetch(pc);
  if (!word) throw SimFault(mem_.fetch_fault_kind(pc), pc, pc);

  const DecodedInstr d = decode(*word);
  const uint32_t rs1 = state_.regs[d.rs1];
  const uint32_t rs2 = state_.regs[d.rs2];
  uint32_t next_pc = pc + 4;
  bool halt = false;

  try {
    switch (d.kind) {
      case Op::Lui: write_reg(d.rd, d.imm); break;
      case Op::Auipc: write_reg(d.rd, pc + d.imm); break;
      case Op::Jal:
        write_reg(d.rd, pc + 4);
        next_pc = pc + d.imm;
        break;
      case Op::Jalr: {
        const uint32_t target = (rs1 + d.imm) & ~1u;
        write_reg(d.rd, pc + 4);
        next_pc = target;
        break;
      }
      case Op::Beq: if (rs1 == rs2) next_pc = pc + d.imm; break;
      case Op::Bne: if (rs1 != rs2) next_pc = pc + d.imm; break;
      case Op::Blt: if (int32_t(rs1) < int32_t(rs2)) next_pc = pc + d.imm; break;
      case Op::Bge: if (int32_t(rs1) >= int32_t(rs2)) next_pc = pc + d.imm; break;
      case Op::Bltu: if (rs1 < rs2) next_pc = pc + d.imm; break;
      case Op::Bgeu: if (rs1 >= rs2) next_pc = pc + d.imm; break;
      case Op::Lb: {
        const uint32_t addr = rs1 + d.imm;
        const uint32_t w = mem_.load_word(addr, 1);
        write_reg(d.rd, uint32_t(int32_t(int8_t(w >> (8 * (addr & 3))))));
        break;
      }
      case Op::Lbu: {
        const uint32_t addr = rs1 + d.imm;
        const uint32_t w = mem_.load_word(addr, 1);
        write_reg(d.rd, (w >> (8 * (addr & 3))) & 0xFF);
        break;
      }
      case Op::Lh: {
        const uint32_t addr = rs1 + d.imm;
        const uint32_t w = mem_.load_word(addr, 2);
        write_reg(d.rd, uint32_t(int32_t(int16_t(w >> (8 * (addr & 3))))));
        break;
      }
      case Op::Lhu: {
        const uint32_t addr = rs1 + d.imm;
        const uint32_t w = mem_.load_word(addr, 2);
        write_reg(d.rd, (w >> (8 * (addr & 3))) & 0xFFFF);
        break;
      }
      case Op::Lw: {
        const uint32_t addr = rs1 + d.imm;
        write_reg(d.rd, mem_.load_word(addr, 4));
        break;
      }
      case Op::Sb: mem_.store(rs1 + d.imm, 1, rs2); break;
      case Op::Sh: mem_.store(rs1 + d.imm, 2, rs2); break;
      case Op::Sw: mem_.store(rs1 + d.imm, 4, rs2); break;
      case Op::Addi: write_reg(d.rd, rs1 + d.imm); break;
      case Op::Slti: write_reg(d.rd, int32_t(rs1) < int32_t(d.imm) ? 1 : 0); break;
      case Op::Sltiu: write_reg(d.rd, rs1 < d.imm ? 1 : 0); break;
      case Op::Xori: write_reg(d.rd, rs1 ^ d.imm); break;
      case Op::Ori: write_reg(d.rd, rs1 | d.imm); break;
      case Op::Andi: write_reg(d.rd, rs1 & d.imm); break;
      case Op::Slli: write_reg(d.rd, rs1 << (d.imm & 31)); break;
      case Op::Srli: write_reg(d.rd, rs1 >> (d.imm & 31)); break;
      case Op::Srai: write_reg(d.rd, uint32_t(int32_t(rs1) >> (d.imm & 31))); break;
      case Op::Add: write_reg(d.rd, rs1 + rs2); break;
      case Op::Sub: write_reg(d.rd, rs1 - rs2); break;
      case Op::Sll: write_reg(d.rd, rs1 << (rs2 & 31)); break;
      case Op::Slt: write_reg(d.rd, int32_t(rs1) < int32_t(rs2) ? 1 : 0); break;
      case Op::Sltu: write_reg(d.rd, rs1 < rs2 ? 1 : 0); break;
      case Op::Xor: write_reg(d.rd, rs1 ^ rs2); break;
      case Op::Srl: write_reg(d.rd, rs1 >> (rs2 & 31)); break;
      case Op::Sra: write_reg(d.rd, uint32_t(int32_t(rs1) >> (rs2 & 31))); break;
      case Op::Or: write_reg(d.rd, rs1 | rs2); break;
      case Op::And: write_reg(d.rd, rs1 & rs2); break;
      case Op::Fence: break;
      case Op::Ecall:
      case Op::Ebreak:
      case Op::Illegal:
        halt = true;
        break;
    }
  } catch (SimFault& f) {
    f.pc = pc;
    throw;
  }

  state_.pc = next_pc;
  halted_ = halt;

  out.pc = pc;
  out.raw = *word;
  out.regs_after = state_.regs;
  assert(out.regs_after[0] == 0);
  return halt;
}

FuncRunResult FuncSim::run(uint64_t max_steps, const CommitSink& sink) {
  assert(max_steps > 0);
  FuncRunResult res;
  CommitRecord rec;
  for (uint64_t i = 0; i < max_steps && !halted_; ++i) {
    const bool halt = step(rec);
    ++res.retired;
    if (sink) sink(rec);
    if (halt) {
      res.halted = true;
      break;
    }
  }
  res.halted = halted_;
  return res;
}

FuncRunResult FuncSim::run_collect(uint64_t max_steps, std::vector<CommitRecord>& log) {
  return run(max_steps, [&log](const CommitRecord& r) { log.push_back(r); });
}

}  // namespace rvp
