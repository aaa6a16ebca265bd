#include "rvp/datapath.hpp"

#include <bit>
#include <cassert>

namespace rvp {

namespace {

constexpr uint32_t gate(bool sel) { return sel ? 0xFFFFFFFFu : 0u; }

constexpr uint32_t sext8(uint32_t v) { return uint32_t(int32_t(int8_t(v))); }
constexpr uint32_t sext16(uint32_t v) { return uint32_t(int32_t(int16_t(v))); }

}  // namespace

uint32_t alu_mux(uint32_t a, uint32_t b, AluOp sel) {
  const unsigned sh = b & 31;
  switch (sel) {
    case AluOp::Add: return a + b;
    case AluOp::Sub: return a - b;
    case AluOp::Sll: return a << sh;
    case AluOp::Slt: return int32_t(a) < int32_t(b) ? 1 : 0;
    case AluOp::Sltu: return a < b ? 1 : 0;
    case AluOp::Xor: return a ^ b;
    case AluOp::Srl: return a >> sh;
    case AluOp::Sra: return uint32_t(int32_t(a) >> sh);
    case AluOp::Or: return a | b;
    case AluOp::And: return a & b;
  }
  assert(false && "bad alu select");
  return 0;
}

uint32_t alu_onehot(uint32_t a, uint32_t b, AluOneHot sel) {
  assert(std::popcount(sel) == 1 && sel < (1u << kAluOpCount));
  const unsigned sh = b & 31;
  uint32_t r = 0;
  r ^= (a + b) & gate(sel & alu_onehot_sel(AluOp::Add));
  r ^= (a - b) & gate(sel & alu_onehot_sel(AluOp::Sub));
  r ^= (a << sh) & gate(sel & alu_onehot_sel(AluOp::Sll));
  r ^= uint32_t(int32_t(a) < int32_t(b)) & gate(sel & alu_onehot_sel(AluOp::Slt));
  r ^= uint32_t(a < b) & gate(sel & alu_onehot_sel(AluOp::Sltu));
  r ^= (a ^ b) & gate(sel & alu_onehot_sel(AluOp::Xor));
  r ^= (a >> sh) & gate(sel & alu_onehot_sel(AluOp::Srl));
  r ^= uint32_t(int32_t(a) >> sh) & gate(sel & alu_onehot_sel(AluOp::Sra));
  r ^= (a | b) & gate(sel & alu_onehot_sel(AluOp::Or));
  r ^= (a & b) & gate(sel & alu_onehot_sel(AluOp::And));
  return r;
}

namespace {

// Line numbering for the one-hot align/extend selector.
//   0..3  : LB  offset 0..3
//   4..7  : LBU offset 0..3
//   8..9  : LH  offset 0,2
//   10..11: LHU offset 0,2
//   12    : LW  offset 0
int line_of(LoadOp op, unsigned offset) {
  switch (op) {
    case LoadOp::Lb: return int(offset);
    case LoadOp::Lbu: return 4 + int(offset);
    case LoadOp::Lh: return offset == 0 ? 8 : offset == 2 ? 9 : -1;
    case LoadOp::Lhu: return offset == 0 ? 10 : offset == 2 ? 11 : -1;
    case LoadOp::Lw: return offset == 0 ? 12 : -1;
  }
  return -1;
}

}  // namespace

LoadExtendOneHot load_extend_onehot_sel(LoadOp op, unsigned offset) {
  const int line = line_of(op, offset);
  assert(line >= 0 && "illegal load selector");
  return LoadExtendOneHot(1u << line);
}

uint32_t load_extend_mux(uint32_t word, LoadExtendSelect sel) {
  const unsigned off = sel.offset;
  switch (sel.op) {
    case LoadOp::Lb: return sext8(word >> (8 * off));
    case LoadOp::Lbu: return (word >> (8 * off)) & 0xFF;
    case LoadOp::Lh:
      assert(off == 0 || off == 2);
      return sext16(word >> (8 * off));
    case LoadOp::Lhu:
      assert(off == 0 || off == 2);
      return (word >> (8 * off)) & 0xFFFF;
    case LoadOp::Lw:
      assert(off == 0);
      return word;
  }
  assert(false && "bad load select");
  return 0;
}

uint32_t load_extend_onehot(uint32_t word, LoadExtendOneHot sel) {
  assert(std::popcount(sel) == 1 && sel < (1u << kLoadExtendLines));
  uint32_t r = 0;
  // Byte lanes, signed then unsigned.
  for (unsigned off = 0; off < 4; ++off) {
    const uint32_t byte = (word >> (8 * off)) & 0xFF;
    r ^= sext8(byte) & gate(sel & (1u << off));
    r ^= byte & gate(sel & (1u << (4 + off)));
  }
  // Halfword lanes.
  for (unsigned i = 0; i < 2; ++i) {
    const uint32_t half = (word >> (16 * i)) & 0xFFFF;
    r ^= sext16(half) & gate(sel & (1u << (8 + i)));
    r ^= half & gate(sel & (1u << (10 + i)));
  }
  // Word lane.
  r ^= word & gate(sel & (1u << 12));
  return r;
}

LoadOp load_op_of(Op kind) {
  switch (kind) {
    case Op::Lb: return LoadOp::Lb;
    case Op::Lbu: return LoadOp::Lbu;
    case Op::Lh: return LoadOp::Lh;
    case Op::Lhu: return LoadOp::Lhu;
    case Op::Lw: return LoadOp::Lw;
    default: break;
  }
  assert(false && "not a load");
  return LoadOp::Lw;
}

BranchOutcome resolve_branch(const DecodedInstr& instr, uint32_t rs1_val,
                             uint32_t rs2_val, uint32_t pc) {
  switch (instr.kind) {
    case Op::Beq: return {rs1_val == rs2_val, pc + instr.imm};
    case Op::Bne: return {rs1_val != rs2_val, pc + instr.imm};
    case Op::Blt: return {int32_t(rs1_val) < int32_t(rs2_val), pc + instr.imm};
    case Op::Bge: return {int32_t(rs1_val) >= int32_t(rs2_val), pc + instr.imm};
    case Op::Bltu: return {rs1_val < rs2_val, pc + instr.imm};
    case Op::Bgeu: return {rs1_val >= rs2_val, pc + instr.imm};
    case Op::Jal: return {true, pc + instr.imm};
    case Op::Jalr: return {true, (rs1_val + instr.imm) & ~1u};
    default: break;
  }
  assert(false && "not a control transfer");
  return {false, pc + 4};
}

}  // namespace rvp
