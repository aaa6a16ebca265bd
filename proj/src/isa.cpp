#include "rvp/isa.hpp"

#include <cstddef>

namespace rvp {

namespace {

constexpr uint32_t sext(uint32_t value, unsigned bits) {
  const uint32_t sign = 1u << (bits - 1);
  return (value ^ sign) - sign;
}

constexpr uint32_t imm_i(uint32_t w) { return sext(w >> 20, 12); }
constexpr uint32_t imm_s(uint32_t w) {
  return sext(((w >> 25) << 5) | ((w >> 7) & 0x1F), 12);
}
constexpr uint32_t imm_b(uint32_t w) {
  uint32_t v = (((w >> 31) & 1) << 12) | (((w >> 7) & 1) << 11) |
               (((w >> 25) & 0x3F) << 5) | (((w >> 8) & 0xF) << 1);
  return sext(v, 13);
}
constexpr uint32_t imm_u(uint32_t w) { return w & 0xFFFFF000u; }
constexpr uint32_t imm_j(uint32_t w) {
  uint32_t v = (((w >> 31) & 1) << 20) | (((w >> 12) & 0xFF) << 12) |
               (((w >> 20) & 1) << 11) | (((w >> 21) & 0x3FF) << 1);
  return sext(v, 21);
}

struct AttrsTableEntry {
  Op op;
  InstrAttrs attrs;
};

// reads_rs1, reads_rs2, writes_rd, is_load, is_store, is_cond_branch, is_jump
constexpr AttrsTableEntry kAttrs[] = {
    {Op::Lui,    {false, false, true,  false, false, false, false}},
    {Op::Auipc,  {false, false, true,  false, false, false, false}},
    {Op::Jal,    {false, false, true,  false, false, false, true}},
    {Op::Jalr,   {true,  false, true,  false, false, false, true}},
    {Op::Beq,    {true,  true,  false, false, false, true,  false}},
    {Op::Bne,    {true,  true,  false, false, false, true,  false}},
    {Op::Blt,    {true,  true,  false, false, false, true,  false}},
    {Op::Bge,    {true,  true,  false, false, false, true,  false}},
    {Op::Bltu,   {true,  true,  false, false, false, true,  false}},
    {Op::Bgeu,   {true,  true,  false, false, false, true,  false}},
    {Op::Lb,     {true,  false, true,  true,  false, false, false}},
    {Op::Lh,     {true,  false, true,  true,  false, false, false}},
    {Op::Lw,     {true,  false, true,  true,  false, false, false}},
    {Op::Lbu,    {true,  false, true,  true,  false, false, false}},
    {Op::Lhu,    {true,  false, true,  true,  false, false, false}},
    {Op::Sb,     {true,  true,  false, false, true,  false, false}},
    {Op::Sh,     {true,  true,  false, false, true,  false, false}},
    {Op::Sw,     {true,  true,  false, false, true,  false, false}},
    {Op::Addi,   {true,  false, true,  false, false, false, false}},
    {Op::Slti,   {true,  false, true,  false, false, false, false}},
    {Op::Sltiu,  {true,  false, true,  false, false, false, false}},
    {Op::Xori,   {true,  false, true,  false, false, false, false}},
    {Op::Ori,    {true,  false, true,  false, false, false, false}},
    {Op::Andi,   {true,  false, true,  false, false, false, false}},
    {Op::Slli,   {true,  false, true,  false, false, false, false}},
    {Op::Srli,   {true,  false, true,  false, false, false, false}},
    {Op::Srai,   {true,  false, true,  false, false, false, false}},
    {Op::Add,    {true,  true,  true,  false, false, false, false}},
    {Op::Sub,    {true,  true,  true,  false, false, false, false}},
    {Op::Sll,    {true,  true,  true,  false, false, false, false}},
    {Op::Slt,    {true,  true,  true,  false, false, false, false}},
    {Op::Sltu,   {true,  true,  true,  false, false, false, false}},
    {Op::Xor,    {true,  true,  true,  false, false, false, false}},
    {Op::Srl,    {true,  true,  true,  false, false, false, false}},
    {Op::Sra,    {true,  true,  true,  false, false, false, false}},
    {Op::Or,     {true,  true,  true,  false, false, false, false}},
    {Op::And,    {true,  true,  true,  false, false, false, false}},
    {Op::Fence,  {false, false, false, false, false, false, false}},
    {Op::Ecall,  {false, false, false, false, false, false, false}},
    {Op::Ebreak, {false, false, false, false, false, false, false}},
    {Op::Illegal,{false, false, false, false, false, false, false}},
};

constexpr const char* kNames[] = {
    "lui", "auipc", "jal", "jalr",
    "beq", "bne", "blt", "bge", "bltu", "bgeu",
    "lb", "lh", "lw", "lbu", "lhu",
    "sb", "sh", "sw",
    "addi", "slti", "sltiu", "xori", "ori", "andi", "slli", "srli", "srai",
    "add", "sub", "sll", "slt", "sltu", "xor", "srl", "sra", "or", "and",
    "fence", "ecall", "ebreak",
    "illegal",
};

DecodedInstr make(uint32_t w, Op op, Format fmt) {
  DecodedInstr d;
  d.kind = op;
  d.format = fmt;
  d.raw = w;
  d.attrs = attrs_of(op);
  const uint8_t rd = (w >> 7) & 0x1F;
  const uint8_t rs1 = (w >> 15) & 0x1F;
  const uint8_t rs2 = (w >> 20) & 0x1F;
  if (d.attrs.writes_rd) d.rd = rd;
  if (d.attrs.reads_rs1) d.rs1 = rs1;
  if (d.attrs.reads_rs2) d.rs2 = rs2;
  switch (fmt) {
    case Format::R: d.imm = 0; break;
    case Format::I: d.imm = imm_i(w); break;
    case Format::S: d.imm = imm_s(w); break;
    case Format::B: d.imm = imm_b(w); break;
    case Format::U: d.imm = imm_u(w); break;
    case Format::J: d.imm = imm_j(w); break;
  }
  return d;
}

DecodedInstr illegal(uint32_t w) {
  DecodedInstr d;
  d.kind = Op::Illegal;
  d.format = Format::I;
  d.raw = w;
  d.attrs = attrs_of(Op::Illegal);
  return d;
}

}  // namespace

const InstrAttrs& attrs_of(Op op) {
  return kAttrs[static_cast<size_t>(op)].attrs;
}

const char* name_of(Op op) { return kNames[static_cast<size_t>(op)]; }

DecodedInstr decode(uint32_t w) {
  const uint32_t opcode = w & 0x7F;
  const uint32_t funct3 = (w >> 12) & 0x7;
  const uint32_t funct7 = w >> 25;
  switch (opcode) {
    case 0x37: return make(w, Op::Lui, Format::U);
    case 0x17: return make(w, Op::Auipc, Format::U);
    case 0x6F: return make(w, Op::Jal, Format::J);
    case 0x67:
      if (funct3 == 0) return make(w, Op::Jalr, Format::I);
      return illegal(w);
    case 0x63:
      switch (funct3) {
        case 0: return make(w, Op::Beq, Format::B);
        case 1: return make(w, Op::Bne, Format::B);
        case 4: return make(w, Op::Blt, Format::B);
        case 5: return make(w, Op::Bge, Format::B);
        case 6: return make(w, Op::Bltu, Format::B);
        case 7: return make(w, Op::Bgeu, Format::B);
        default: return illegal(w);
      }
    case 0x03:
      switch (funct3) {
        case 0: return make(w, Op::Lb, Format::I);
        case 1: return make(w, Op::Lh, Format::I);
        case 2: return make(w, Op::Lw, Format::I);
        case 4: return make(w, Op::Lbu, Format::I);
        case 5: return make(w, Op::Lhu, Format::I);
        default: return illegal(w);
      }
    case 0x23:
      switch (funct3) {
        case 0: return make(w, Op::Sb, Format::S);
        case 1: return make(w, Op::Sh, Format::S);
        case 2: return make(w, Op::Sw, Format::S);
        default: return illegal(w);
      }
    case 0x13:
      switch (funct3) {
        case 0: return make(w, Op::Addi, Format::I);
        case 2: return make(w, Op::Slti, Format::I);
        case 3: return make(w, Op::Sltiu, Format::I);
        case 4: return make(w, Op::Xori, Format::I);
        case 6: return make(w, Op::Ori, Format::I);
        case 7: return make(w, Op::Andi, Format::I);
        case 1:
          if (funct7 == 0x00) return make(w, Op::Slli, Format::I);
          return illegal(w);
        case 5:
          if (funct7 == 0x00) return make(w, Op::Srli, Format::I);
          if (funct7 == 0x20) return make(w, Op::Srai, Format::I);
          return illegal(w);
        default: return illegal(w);
      }
    case 0x33:
      if (funct7 == 0x00) {
        switch (funct3) {
          case 0: return make(w, Op::Add, Format::R);
          case 1: return make(w, Op::Sll, Format::R);
          case 2: return make(w, Op::Slt, Format::R);
          case 3: return make(w, Op::Sltu, Format::R);
          case 4: return make(w, Op::Xor, Format::R);
          case 5: return make(w, Op::Srl, Format::R);
          case 6: return make(w, Op::Or, Format::R);
          case 7: return make(w, Op::And, Format::R);
        }
      } else if (funct7 == 0x20) {
        if (funct3 == 0) return make(w, Op::Sub, Format::R);
        if (funct3 == 5) return make(w, Op::Sra, Format::R);
      }
      return illegal(w);
    case 0x0F:
      // FENCE executes as a NOP on a single in-order core.
      if (funct3 == 0) return make(w, Op::Fence, Format::I);
      return illegal(w);
    case 0x73:
      if (w == 0x00000073) return make(w, Op::Ecall, Format::I);
      if (w == 0x00100073) return make(w, Op::Ebreak, Format::I);
      return illegal(w);
    default:
      return illegal(w);
  }
}

IfDecode decode_if(uint32_t w) {
  // Projection of the full decoder; keeping the two in agreement on shared
  // fields (including all illegal encodings) matters more than mimicking the
  // narrower hardware circuit.
  const DecodedInstr d = decode(w);
  IfDecode p;
  p.rs1 = d.rs1;
  p.rs2 = d.rs2;
  p.rd = d.rd;
  p.writes_rd = d.attrs.writes_rd;
  p.is_load = d.attrs.is_load;
  p.is_store = d.attrs.is_store;
  return p;
}

}  // namespace rvp
