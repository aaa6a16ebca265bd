#pragma once

#include <cstdint>

namespace rvp {

// The RV32I base operations (37 computational/control/memory instructions
// plus FENCE/ECALL/EBREAK). Anything else decodes to Illegal.
enum class Op : uint8_t {
  Lui, Auipc,
  Jal, Jalr,
  Beq, Bne, Blt, Bge, Bltu, Bgeu,
  Lb, Lh, Lw, Lbu, Lhu,
  Sb, Sh, Sw,
  Addi, Slti, Sltiu, Xori, Ori, Andi, Slli, Srli, Srai,
  Add, Sub, Sll, Slt, Sltu, Xor, Srl, Sra, Or, And,
  Fence, Ecall, Ebreak,
  Illegal,
};

enum class Format : uint8_t { R, I, S, B, U, J };

// Per-kind control attributes. A pure function of Op.
struct InstrAttrs {
  bool reads_rs1 = false;
  bool reads_rs2 = false;
  bool writes_rd = false;
  bool is_load = false;
  bool is_store = false;
  bool is_cond_branch = false;
  bool is_jump = false;
};

const InstrAttrs& attrs_of(Op op);
const char* name_of(Op op);

struct DecodedInstr {
  Op kind = Op::Illegal;
  Format format = Format::I;
  uint8_t rd = 0;     // 0 unless the format has an rd field
  uint8_t rs1 = 0;    // 0 unless the instruction reads rs1
  uint8_t rs2 = 0;    // 0 unless the instruction reads rs2
  uint32_t imm = 0;   // sign-extended immediate (U-type: already shifted)
  uint32_t raw = 0;
  InstrAttrs attrs;

  // ECALL/EBREAK and illegal encodings all stop the machine deterministically.
  bool halts() const { return kind == Op::Ecall || kind == Op::Ebreak || kind == Op::Illegal; }
  bool is_control_transfer() const { return attrs.is_cond_branch || attrs.is_jump; }
};

// The slice of a decode that early hazard detection needs. Register index
// fields are zero for operands the instruction does not actually use, so a
// plain index compare never false-positives against a non-source field.
struct IfDecode {
  uint8_t rs1 = 0;
  uint8_t rs2 = 0;
  uint8_t rd = 0;
  bool writes_rd = false;
  bool is_load = false;
  bool is_store = false;
};

// Total and deterministic over all 32-bit words.
DecodedInstr decode(uint32_t word);

// Partial decode; agrees with decode() on every field it reports.
IfDecode decode_if(uint32_t word);

}  // namespace rvp
