#pragma once

#include <cstdint>

#include "rvp/isa.hpp"

namespace rvp {

// The ten ALU operations, shared by the binary-select and one-hot forms.
enum class AluOp : uint8_t { Add, Sub, Sll, Slt, Sltu, Xor, Srl, Sra, Or, And };
inline constexpr unsigned kAluOpCount = 10;

// One-hot select vector: exactly one of bits 0..9 set.
using AluOneHot = uint16_t;
constexpr AluOneHot alu_onehot_sel(AluOp op) {
  return AluOneHot(1u << static_cast<unsigned>(op));
}

// Wide-multiplexer form: direct case analysis on the binary code.
uint32_t alu_mux(uint32_t a, uint32_t b, AluOp sel);

// XOR-merge form: every candidate is gated to zero unless its select bit is
// set, then all candidates are merged with exclusive OR. Equal to alu_mux
// for every legal select.
uint32_t alu_onehot(uint32_t a, uint32_t b, AluOneHot sel);

// Load alignment and extension selectors. offset is the low 2 bits of the
// effective address; halfword ops allow {0,2}, word requires 0.
enum class LoadOp : uint8_t { Lb, Lbu, Lh, Lhu, Lw };

struct LoadExtendSelect {
  LoadOp op;
  uint8_t offset;
};

// 13 legal (op, offset) lines: 4+4 byte, 2+2 halfword, 1 word.
using LoadExtendOneHot = uint16_t;
inline constexpr unsigned kLoadExtendLines = 13;
LoadExtendOneHot load_extend_onehot_sel(LoadOp op, unsigned offset);

uint32_t load_extend_mux(uint32_t word, LoadExtendSelect sel);
uint32_t load_extend_onehot(uint32_t word, LoadExtendOneHot sel);

LoadOp load_op_of(Op kind);  // pre: kind is a load

// Branch/jump resolution: pre is a conditional branch, JAL, or JALR.
struct BranchOutcome {
  bool taken;
  uint32_t target;
};
BranchOutcome resolve_branch(const DecodedInstr& instr, uint32_t rs1_val,
                             uint32_t rs2_val, uint32_t pc);

}  // namespace rvp
