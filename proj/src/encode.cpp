#include "rvp/encode.hpp"

#include <cassert>

namespace rvp {

namespace {

uint32_t opcode_of(Op op) {
  switch (op) {
    case Op::Lui: return 0x37;
    case Op::Auipc: return 0x17;
    case Op::Jal: return 0x6F;
    case Op::Jalr: return 0x67;
    case Op::Beq: case Op::Bne: case Op::Blt:
    case Op::Bge: case Op::Bltu: case Op::Bgeu: return 0x63;
    case Op::Lb: case Op::Lh: case Op::Lw: case Op::Lbu: case Op::Lhu: return 0x03;
    case Op::Sb: case Op::Sh: case Op::Sw: return 0x23;
    case Op::Addi: case Op::Slti: case Op::Sltiu: case Op::Xori:
    case Op::Ori: case Op::Andi: case Op::Slli: case Op::Srli: case Op::Srai: return 0x13;
    case Op::Add: case Op::Sub: case Op::Sll: case Op::Slt: case Op::Sltu:
    case Op::Xor: case Op::Srl: case Op::Sra: case Op::Or: case Op::And: return 0x33;
    case Op::Fence: return 0x0F;
    case Op::Ecall: case Op::Ebreak: return 0x73;
    case Op::Illegal: break;
  }
  assert(false && "not encodable");
  return 0;
}

uint32_t funct3_of(Op op) {
  switch (op) {
    case Op::Jalr: return 0;
    case Op::Beq: return 0; case Op::Bne: return 1;
    case Op::Blt: return 4; case Op::Bge: return 5;
    case Op::Bltu: return 6; case Op::Bgeu: return 7;
    case Op::Lb: return 0; case Op::Lh: return 1; case Op::Lw: return 2;
    case Op::Lbu: return 4; case Op::Lhu: return 5;
    case Op::Sb: return 0; case Op::Sh: return 1; case Op::Sw: return 2;
    case Op::Addi: return 0; case Op::Slti: return 2; case Op::Sltiu: return 3;
    case Op::Xori: return 4; case Op::Ori: return 6; case Op::Andi: return 7;
    case Op::Slli: return 1; case Op::Srli: case Op::Srai: return 5;
    case Op::Add: case Op::Sub: return 0;
    case Op::Sll: return 1; case Op::Slt: return 2; case Op::Sltu: return 3;
    case Op::Xor: return 4; case Op::Srl: case Op::Sra: return 5;
    case Op::Or: return 6; case Op::And: return 7;
    default: return 0;
  }
}

uint32_t funct7_of(Op op) {
  switch (op) {
    case Op::Sub: case Op::Sra: return 0x20;
    default: return 0x00;
  }
}

}  // namespace

uint32_t enc_r(Op op, unsigned rd, unsigned rs1, unsigned rs2) {
  assert(rd < 32 && rs1 < 32 && rs2 < 32);
  return (funct7_of(op) << 25) | (rs2 << 20) | (rs1 << 15) |
         (funct3_of(op) << 12) | (rd << 7) | opcode_of(op);
}

uint32_t enc_i(Op op, unsigned rd, unsigned rs1, int32_t imm) {
  assert(rd < 32 && rs1 < 32);
  assert(imm >= -2048 && imm < 2048);
  return ((uint32_t(imm) & 0xFFF) << 20) | (rs1 << 15) |
         (funct3_of(op) << 12) | (rd << 7) | opcode_of(op);
}

uint32_t enc_s(Op op, unsigned rs1, unsigned rs2, int32_t imm) {
  assert(rs1 < 32 && rs2 < 32);
  assert(imm >= -2048 && imm < 2048);
  const uint32_t v = uint32_t(imm) & 0xFFF;
  return ((v >> 5) << 25) | (rs2 << 20) | (rs1 << 15) |
         (funct3_of(op) << 12) | ((v & 0x1F) << 7) | opcode_of(op);
}

uint32_t enc_b(Op op, unsigned rs1, unsigned rs2, int32_t offset) {
  assert(rs1 < 32 && rs2 < 32);
  assert(offset >= -4096 && offset < 4096 && (offset & 1) == 0);
  const uint32_t v = uint32_t(offset) & 0x1FFF;
  return (((v >> 12) & 1) << 31) | (((v >> 5) & 0x3F) << 25) | (rs2 << 20) |
         (rs1 << 15) | (funct3_of(op) << 12) | (((v >> 1) & 0xF) << 8) |
         (((v >> 11) & 1) << 7) | opcode_of(op);
}

uint32_t enc_u(Op op, unsigned rd, uint32_t imm) {
  assert(rd < 32);
  return (imm & 0xFFFFF000u) | (rd << 7) | opcode_of(op);
}

uint32_t enc_j(Op op, unsigned rd, int32_t offset) {
  assert(rd < 32);
  assert(offset >= -(1 << 20) && offset < (1 << 20) && (offset & 1) == 0);
  const uint32_t v = uint32_t(offset) & 0x1FFFFF;
  return (((v >> 20) & 1) << 31) | (((v >> 1) & 0x3FF) << 21) |
         (((v >> 11) & 1) << 20) | (((v >> 12) & 0xFF) << 12) | (rd << 7) |
         opcode_of(op);
}

uint32_t encode(const DecodedInstr& d) {
  const uint32_t raw = d.raw;
  switch (d.format) {
    case Format::R:
      return enc_r(d.kind, d.rd, d.rs1, d.rs2);
    case Format::I:
      switch (d.kind) {
        case Op::Fence:
        case Op::Ecall:
        case Op::Ebreak:
          return raw;  // operand-free; encoded fields live in raw only
        case Op::Slli:
        case Op::Srli:
        case Op::Srai: {
          const uint32_t f7 = d.kind == Op::Srai ? 0x20u : 0x00u;
          return (f7 << 25) | ((d.imm & 0x1F) << 20) | (uint32_t(d.rs1) << 15) |
                 (funct3_of(d.kind) << 12) | (uint32_t(d.rd) << 7) | opcode_of(d.kind);
        }
        default:
          return enc_i(d.kind, d.rd, d.rs1, int32_t(d.imm));
      }
    case Format::S:
      return enc_s(d.kind, d.rs1, d.rs2, int32_t(d.imm));
    case Format::B:
      return enc_b(d.kind, d.rs1, d.rs2, int32_t(d.imm));
    case Format::U:
      return enc_u(d.kind, d.rd, d.imm);
    case Format::J:
      return enc_j(d.kind, d.rd, int32_t(d.imm));
  }
  return raw;
}

Program::Label Program::label() {
  label_pc_.push_back(-1);
  return label_pc_.size() - 1;
}

Program::Label Program::label_here() {
  Label l = label();
  bind(l);
  return l;
}

void Program::bind(Label l) {
  assert(l < label_pc_.size() && label_pc_[l] < 0);
  label_pc_[l] = here();
}

void Program::emit_branch(Op op, unsigned rs1, unsigned rs2, Label target) {
  fixups_.push_back({words_.size(), target, false});
  // Placeholder offset 0; patched in resolve().
  words_.push_back(enc_b(op, rs1, rs2, 0));
}

void Program::emit_jal(unsigned rd, Label target) {
  fixups_.push_back({words_.size(), target, true});
  words_.push_back(enc_j(Op::Jal, rd, 0));
}

void Program::resolve() const {
  if (resolved_) return;
  auto* self = const_cast<Program*>(this);
  for (const Fixup& f : fixups_) {
    assert(label_pc_[f.label] >= 0 && "unbound label");
    const uint32_t instr_pc = origin_ + uint32_t(f.word_index) * 4;
    const int32_t off = int32_t(uint32_t(label_pc_[f.label]) - instr_pc);
    const uint32_t old = words_[f.word_index];
    const DecodedInstr d = decode(old);
    self->words_[f.word_index] =
        f.is_jal ? enc_j(Op::Jal, d.rd, off)
                 : enc_b(d.kind, d.rs1, d.rs2, off);
  }
  self->resolved_ = true;
}

const std::vector<uint32_t>& Program::words() const {
  resolve();
  return words_;
}

}  // namespace rvp
