// The bundled microbenchmarks. Hand-assembled so the suite has no compiler
// dependency; externally built RV32I flat binaries run through the same CLI.
//
// Conventions: programs start at pc 0, end with ECALL, and address data
// memory through a register holding the dmem base (0x8000 by default).

#include <cassert>

#include "rvp/encode.hpp"
#include "rvp/harness.hpp"

namespace rvp {

namespace {

constexpr uint32_t kDmemBase = 0x8000;

Benchmark from_program(std::string name, const Program& p,
                       MemImage dmem = MemImage{kDmemBase, {}}) {
  Benchmark b;
  b.name = std::move(name);
  b.imem = MemImage::from_words(p.origin(), p.words());
  b.dmem = std::move(dmem);
  b.entry = p.origin();
  return b;
}

// All ten ALU operations plus LUI/AUIPC, some with immediate forms, no
// control flow at all.
Benchmark straight_alu() {
  Program p;
  p.emit(addi(1, 0, 100));
  p.emit(addi(2, 0, -7));
  p.emit(lui(3, 0x12345000));
  p.emit(auipc(4, 0x1000));
  p.emit(add(5, 1, 2));
  p.emit(sub(6, 1, 2));
  p.emit(sll(7, 1, 2));    // shift amount = low 5 bits of -7
  p.emit(slt(8, 2, 1));
  p.emit(sltu(9, 2, 1));
  p.emit(xor_(10, 3, 1));
  p.emit(srl(11, 3, 2));
  p.emit(sra(12, 3, 2));
  p.emit(or_(13, 2, 1));
  p.emit(and_(14, 2, 1));
  p.emit(slti(15, 2, 5));
  p.emit(sltiu(16, 2, 5));
  p.emit(xori(17, 1, -1));
  p.emit(ori(18, 1, 0x0F0));
  p.emit(andi(19, 1, 0x0F0));
  p.emit(slli(20, 1, 3));
  p.emit(srli(21, 3, 12));
  p.emit(srai(22, 3, 12));
  p.emit(sub(23, 0, 1));
  p.emit(add(24, 23, 1));
  p.emit(sltu(25, 0, 24));
  p.emit(fence());
  p.emit(ecall());
  return from_program("straight_alu", p);
}

// Every instruction consumes the previous result: distance-1 forwarding all
// the way down, with a few distance-2 hops.
Benchmark dependent_chain() {
  Program p;
  p.emit(addi(5, 0, 1));
  for (int i = 0; i < 12; ++i) {
    p.emit(add(5, 5, 5));
    p.emit(xori(5, 5, 0x2A5));
    p.emit(slli(5, 5, 1));
    p.emit(srai(5, 5, 2));
    p.emit(sub(6, 5, 5));   // distance 1
    p.emit(add(5, 5, 6));   // distance 1 on x6, distance 2 on x5
    p.emit(ori(5, 5, 3));
  }
  p.emit(ecall());
  return from_program("dependent_chain", p);
}

// Loads feeding their very next instruction, over and over.
Benchmark load_use_ladder() {
  Program p;
  p.emit(lui(10, kDmemBase));
  p.emit(addi(1, 0, 0x7A));
  p.emit(sw(1, 10, 0));
  p.emit(addi(1, 1, 0x111));
  p.emit(sw(1, 10, 4));
  p.emit(sh(1, 10, 8));
  p.emit(sb(1, 10, 12));
  for (int i = 0; i < 8; ++i) {
    p.emit(lw(2, 10, 0));
    p.emit(add(3, 2, 2));      // load-use
    p.emit(lw(4, 10, 4));
    p.emit(sub(3, 3, 4));      // load-use
    p.emit(lh(5, 10, 8));
    p.emit(add(3, 3, 5));      // load-use
    p.emit(lbu(6, 10, 12));
    p.emit(xor_(3, 3, 6));     // load-use
    p.emit(sw(3, 10, 16));
    p.emit(lw(7, 10, 16));
    p.emit(sw(7, 10, 20));     // load feeding store data
  }
  p.emit(ecall());
  return from_program("load_use_ladder", p);
}

// Two-level counted loop; the inner branch is taken three times then falls
// through, per outer iteration.
Benchmark nested_loops() {
  Program p;
  p.emit(addi(1, 0, 5));          // outer count
  const auto outer = p.label_here();
  p.emit(addi(2, 0, 4));          // inner count
  const auto inner = p.label_here();
  p.emit(addi(3, 3, 1));
  p.emit(addi(2, 2, -1));
  p.emit_branch(Op::Bne, 2, 0, inner);
  p.emit(addi(1, 1, -1));
  p.emit_branch(Op::Bne, 1, 0, outer);
  p.emit(ecall());
  return from_program("nested_loops", p);
}

// JAL calls into two leaf functions returning through JALR, inside a loop so
// the jumps recur.
Benchmark calls() {
  Program p;
  const auto f1 = p.label();
  const auto f2 = p.label();
  const auto loop = p.label();
  const auto done = p.label();
  p.emit(addi(10, 0, 0));
  p.emit(addi(4, 0, 4));          // loop count
  p.bind(loop);
  p.emit_jal(1, f1);
  p.emit(slli(11, 10, 1));
  p.emit_jal(1, f2);
  p.emit(addi(4, 4, -1));
  p.emit_branch(Op::Bne, 4, 0, loop);
  p.emit_jal(0, done);
  p.bind(f1);
  p.emit(addi(10, 10, 3));
  p.emit(jalr(0, 1, 0));
  p.bind(f2);
  p.emit(add(10, 10, 11));
  p.emit(xori(10, 10, 0x55));
  p.emit(jalr(0, 1, 0));
  p.bind(done);
  p.emit(ecall());
  return from_program("calls", p);
}

// Bubble sort over eight words seeded in data memory: data-dependent
// branches the predictor cannot fully learn.
Benchmark branchy_sort() {
  Program p;
  p.emit(lui(10, kDmemBase));
  // x1: outer i, x2: inner j, x3: addr, x4/x5: elements
  p.emit(addi(1, 0, 7));
  const auto outer = p.label_here();
  p.emit(addi(2, 0, 0));
  p.emit(add(3, 10, 0));
  const auto inner = p.label_here();
  p.emit(lw(4, 3, 0));
  p.emit(lw(5, 3, 4));
  const auto no_swap = p.label();
  p.emit_branch(Op::Bge, 5, 4, no_swap);   // already ordered
  p.emit(sw(5, 3, 0));
  p.emit(sw(4, 3, 4));
  p.bind(no_swap);
  p.emit(addi(3, 3, 4));
  p.emit(addi(2, 2, 1));
  p.emit_branch(Op::Blt, 2, 1, inner);
  p.emit(addi(1, 1, -1));
  p.emit_branch(Op::Bne, 1, 0, outer);
  p.emit(ecall());
  MemImage data = MemImage::from_words(
      kDmemBase, {0x00000050, 0xFFFFFFC0, 0x00000007, 0x80000000,
                  0x00000001, 0x7FFFFFFF, 0x00000031, 0x00000000});
  return from_program("branchy_sort", p, std::move(data));
}

// Byte and halfword traffic, sign extension, and console output.
Benchmark memory_bytes() {
  Program p;
  p.emit(lui(10, kDmemBase));
  p.emit(lui(20, 0xF0000000));    // console
  p.emit(lui(1, 0x80FFF000));
  p.emit(addi(1, 1, 0x6E1));      // x1 = 0x80FFF6E1
  p.emit(sw(1, 10, 0));
  p.emit(lb(2, 10, 3));           // 0x80 -> 0xFFFFFF80
  p.emit(lbu(3, 10, 3));          // 0x00000080
  p.emit(lh(4, 10, 2));           // 0x80FF -> 0xFFFF80FF
  p.emit(lhu(5, 10, 2));          // 0x000080FF
  p.emit(lb(6, 10, 0));           // 0xE1 -> sign extended
  p.emit(sh(4, 10, 6));
  p.emit(lhu(7, 10, 6));
  p.emit(sb(2, 10, 9));
  p.emit(lbu(8, 10, 9));
  p.emit(add(9, 2, 4));
  p.emit(addi(11, 0, 'O'));
  p.emit(sb(11, 20, 0));
  p.emit(addi(11, 0, 'K'));
  p.emit(sb(11, 20, 0));
  p.emit(addi(11, 0, '\n'));
  p.emit(sb(11, 20, 0));
  p.emit(ecall());
  return from_program("memory_bytes", p);
}

}  // namespace

const std::vector<Benchmark>& bundled_corpus() {
  static const std::vector<Benchmark> corpus = {
      straight_alu(),   dependent_chain(), load_use_ladder(), nested_loops(),
      calls(),          branchy_sort(),    memory_bytes(),
  };
  return corpus;
}

}  // namespace rvp
