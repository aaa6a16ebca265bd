#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rvp/isa.hpp"

namespace rvp {

// Raw instruction encoders. Immediates are validated with assertions; the
// callers are the bundled programs and tests, not untrusted input.
uint32_t enc_r(Op op, unsigned rd, unsigned rs1, unsigned rs2);
uint32_t enc_i(Op op, unsigned rd, unsigned rs1, int32_t imm);
uint32_t enc_s(Op op, unsigned rs1, unsigned rs2, int32_t imm);   // M[rs1+imm] <- rs2
uint32_t enc_b(Op op, unsigned rs1, unsigned rs2, int32_t offset);
uint32_t enc_u(Op op, unsigned rd, uint32_t imm);                 // imm: full 32-bit value, low 12 bits ignored
uint32_t enc_j(Op op, unsigned rd, int32_t offset);

// Re-encodes a decoded legal instruction; decode(encode(d)) == d.raw for
// every word the decoder accepts.
uint32_t encode(const DecodedInstr& d);

// Mnemonic-style helpers, enough to write the bundled programs readably.
inline uint32_t nop() { return enc_i(Op::Addi, 0, 0, 0); }
inline uint32_t lui(unsigned rd, uint32_t imm) { return enc_u(Op::Lui, rd, imm); }
inline uint32_t auipc(unsigned rd, uint32_t imm) { return enc_u(Op::Auipc, rd, imm); }
inline uint32_t addi(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Addi, rd, rs1, imm); }
inline uint32_t slti(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Slti, rd, rs1, imm); }
inline uint32_t sltiu(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Sltiu, rd, rs1, imm); }
inline uint32_t xori(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Xori, rd, rs1, imm); }
inline uint32_t ori(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Ori, rd, rs1, imm); }
inline uint32_t andi(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Andi, rd, rs1, imm); }
inline uint32_t slli(unsigned rd, unsigned rs1, unsigned sh) { return enc_i(Op::Slli, rd, rs1, int32_t(sh)); }
inline uint32_t srli(unsigned rd, unsigned rs1, unsigned sh) { return enc_i(Op::Srli, rd, rs1, int32_t(sh)); }
inline uint32_t srai(unsigned rd, unsigned rs1, unsigned sh) { return enc_i(Op::Srai, rd, rs1, int32_t(0x400 | sh)); }
inline uint32_t add(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::Add, rd, rs1, rs2); }
inline uint32_t sub(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::Sub, rd, rs1, rs2); }
inline uint32_t sll(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::Sll, rd, rs1, rs2); }
inline uint32_t slt(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::Slt, rd, rs1, rs2); }
inline uint32_t sltu(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::Sltu, rd, rs1, rs2); }
inline uint32_t xor_(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::Xor, rd, rs1, rs2); }
inline uint32_t srl(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::Srl, rd, rs1, rs2); }
inline uint32_t sra(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::Sra, rd, rs1, rs2); }
inline uint32_t or_(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::Or, rd, rs1, rs2); }
inline uint32_t and_(unsigned rd, unsigned rs1, unsigned rs2) { return enc_r(Op::And, rd, rs1, rs2); }
inline uint32_t lb(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Lb, rd, rs1, imm); }
inline uint32_t lh(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Lh, rd, rs1, imm); }
inline uint32_t lw(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Lw, rd, rs1, imm); }
inline uint32_t lbu(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Lbu, rd, rs1, imm); }
inline uint32_t lhu(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Lhu, rd, rs1, imm); }
inline uint32_t sb(unsigned rs2, unsigned rs1, int32_t imm) { return enc_s(Op::Sb, rs1, rs2, imm); }
inline uint32_t sh(unsigned rs2, unsigned rs1, int32_t imm) { return enc_s(Op::Sh, rs1, rs2, imm); }
inline uint32_t sw(unsigned rs2, unsigned rs1, int32_t imm) { return enc_s(Op::Sw, rs1, rs2, imm); }
inline uint32_t beq(unsigned rs1, unsigned rs2, int32_t off) { return enc_b(Op::Beq, rs1, rs2, off); }
inline uint32_t bne(unsigned rs1, unsigned rs2, int32_t off) { return enc_b(Op::Bne, rs1, rs2, off); }
inline uint32_t blt(unsigned rs1, unsigned rs2, int32_t off) { return enc_b(Op::Blt, rs1, rs2, off); }
inline uint32_t bge(unsigned rs1, unsigned rs2, int32_t off) { return enc_b(Op::Bge, rs1, rs2, off); }
inline uint32_t bltu(unsigned rs1, unsigned rs2, int32_t off) { return enc_b(Op::Bltu, rs1, rs2, off); }
inline uint32_t bgeu(unsigned rs1, unsigned rs2, int32_t off) { return enc_b(Op::Bgeu, rs1, rs2, off); }
inline uint32_t jal(unsigned rd, int32_t off) { return enc_j(Op::Jal, rd, off); }
inline uint32_t jalr(unsigned rd, unsigned rs1, int32_t imm) { return enc_i(Op::Jalr, rd, rs1, imm); }
inline uint32_t fence() { return 0x0FF0000F; }
inline uint32_t ecall() { return 0x00000073; }
inline uint32_t ebreak() { return 0x00100073; }

// Tiny label-resolving assembler for building test programs.
class Program {
 public:
  using Label = size_t;

  explicit Program(uint32_t origin = 0) : origin_(origin) {}

  uint32_t here() const { return origin_ + uint32_t(words_.size()) * 4; }
  uint32_t origin() const { return origin_; }

  void emit(uint32_t word) { words_.push_back(word); }

  Label label();                 // declare a label, bind later
  Label label_here();            // declare and bind at the current pc
  void bind(Label l);            // bind a declared label at the current pc

  // Control flow against labels; offsets are patched when the label binds.
  void emit_branch(Op op, unsigned rs1, unsigned rs2, Label target);
  void emit_jal(unsigned rd, Label target);

  const std::vector<uint32_t>& words() const;  // asserts all labels bound

 private:
  struct Fixup {
    size_t word_index;
    Label label;
    bool is_jal;
  };

  uint32_t origin_;
  std::vector<uint32_t> words_;
  std::vector<int64_t> label_pc_;  // -1 while unbound
  std::vector<Fixup> fixups_;
  mutable bool resolved_ = false;

  void resolve() const;
};

}  // namespace rvp
