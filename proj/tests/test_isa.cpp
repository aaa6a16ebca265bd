#include <doctest.h>

#include <random>

#include "rvp/encode.hpp"
#include "rvp/harness.hpp"
#include "rvp/isa.hpp"

using namespace rvp;

// Frozen vectors, cross-checked against an independent RV32I encoder.
namespace {
struct Vector {
  uint32_t word;
  Op kind;
  uint8_t rd, rs1, rs2;
  uint32_t imm;
};
const Vector kVectors[] = {
    {0x00000013, Op::Addi, 0, 0, 0, 0},             // canonical NOP
    {0x00B50463, Op::Beq, 0, 10, 11, 8},
    {0x02000663, Op::Beq, 0, 0, 0, 0x2C},
    {0x00700293, Op::Addi, 5, 0, 0, 7},
    {0x40415093, Op::Srai, 1, 2, 0, 0x404},
    {0x405251B3, Op::Sra, 3, 4, 5, 0},
    {0x0083A303, Op::Lw, 6, 7, 0, 8},
    {0xFE84AE23, Op::Sw, 0, 9, 8, uint32_t(-4)},
    {0x008481A3, Op::Sb, 0, 9, 8, 3},
    {0xDEADB537, Op::Lui, 10, 0, 0, 0xDEADB000},
    {0x00001597, Op::Auipc, 11, 0, 0, 0x1000},
    {0x100000EF, Op::Jal, 1, 0, 0, 0x100},
    {0xFF9FF06F, Op::Jal, 0, 0, 0, uint32_t(-8)},
    {0x00008067, Op::Jalr, 0, 1, 0, 0},
    {0xFC0296E3, Op::Bne, 0, 5, 0, uint32_t(-0x34)},
    {0x0020E863, Op::Bltu, 0, 1, 2, 16},
    {0x80D650E3, Op::Bge, 0, 12, 13, uint32_t(-2048)},
    {0x00279703, Op::Lh, 14, 15, 0, 2},
    {0x0018C803, Op::Lbu, 16, 17, 0, 1},
    {0x0069D903, Op::Lhu, 18, 19, 0, 6},
    {0xFFFABA13, Op::Sltiu, 20, 21, 0, uint32_t(-1)},
    {0x018BCB33, Op::Xor, 22, 23, 24, 0},
    {0x01BD1CB3, Op::Sll, 25, 26, 27, 0},
    {0x0FF0000F, Op::Fence, 0, 0, 0, 0x0FF},
    {0x00000073, Op::Ecall, 0, 0, 0, 0},
    {0x00100073, Op::Ebreak, 0, 0, 0, 0x001},
};
}  // namespace

TEST_CASE("decode matches the independent encoder vectors") {
  for (const Vector& v : kVectors) {
    CAPTURE(v.word);
    const DecodedInstr d = decode(v.word);
    CHECK(d.kind == v.kind);
    CHECK(d.rd == v.rd);
    CHECK(d.rs1 == v.rs1);
    CHECK(d.rs2 == v.rs2);
    CHECK(d.imm == v.imm);
    CHECK(d.raw == v.word);
  }
}

TEST_CASE("illegal encodings decode to the illegal kind") {
  CHECK(decode(0xFFFFFFFF).kind == Op::Illegal);
  CHECK(decode(0x00000000).kind == Op::Illegal);
  CHECK(decode(0x00000007).kind == Op::Illegal);  // unknown opcode
  CHECK(decode(0x00301073).kind == Op::Illegal);  // CSRRW: not in the base set
  CHECK(decode(0x02C58533).kind == Op::Illegal);  // MUL: M extension
  CHECK(decode(0x40001013).kind == Op::Illegal);  // SLLI with nonzero funct7
  CHECK(decode(0x00200073).kind == Op::Illegal);  // SYSTEM, neither ECALL nor EBREAK
}

TEST_CASE("attributes are a pure function of kind") {
  CHECK(attrs_of(Op::Lw).is_load);
  CHECK(attrs_of(Op::Lbu).is_load);
  CHECK(!attrs_of(Op::Sw).is_load);
  CHECK(attrs_of(Op::Sh).is_store);
  CHECK(attrs_of(Op::Beq).is_cond_branch);
  CHECK(!attrs_of(Op::Jal).is_cond_branch);
  CHECK(attrs_of(Op::Jal).is_jump);
  CHECK(attrs_of(Op::Jalr).is_jump);
  CHECK(attrs_of(Op::Jalr).reads_rs1);
  CHECK(!attrs_of(Op::Jal).reads_rs1);
  CHECK(attrs_of(Op::Sw).reads_rs2);
  CHECK(!attrs_of(Op::Addi).reads_rs2);
  CHECK(!attrs_of(Op::Illegal).writes_rd);
  CHECK(!attrs_of(Op::Fence).reads_rs1);
  // is_load true exactly for the five loads
  int loads = 0;
  for (int k = 0; k <= int(Op::Illegal); ++k)
    if (attrs_of(Op(k)).is_load) ++loads;
  CHECK(loads == 5);
}

TEST_CASE("branch and jump immediates are even and sign-extended") {
  for (int32_t off : {-4096, -2048, -2, 0, 2, 8, 4094}) {
    const DecodedInstr d = decode(enc_b(Op::Bne, 3, 4, off));
    CHECK(int32_t(d.imm) == off);
    CHECK(d.imm % 2 == 0);
  }
  for (int32_t off : {-(1 << 20), -2, 0, 2, 0x100, (1 << 20) - 2}) {
    const DecodedInstr d = decode(enc_j(Op::Jal, 1, off));
    CHECK(int32_t(d.imm) == off);
    CHECK(d.imm % 2 == 0);
  }
}

TEST_CASE("decode_if fields") {
  const IfDecode nop_if = decode_if(0x00000013);
  CHECK(nop_if.rs1 == 0);
  CHECK(nop_if.rs2 == 0);
  CHECK(nop_if.writes_rd);
  CHECK(nop_if.rd == 0);
  CHECK(!nop_if.is_load);
  CHECK(!nop_if.is_store);

  const IfDecode load = decode_if(lw(6, 7, 8));
  CHECK(load.is_load);
  CHECK(load.rd == 6);
  CHECK(load.rs1 == 7);

  const IfDecode store = decode_if(sw(8, 9, -4));
  CHECK(store.is_store);
  CHECK(!store.writes_rd);
  CHECK(store.rs1 == 9);
  CHECK(store.rs2 == 8);
}

TEST_CASE("decode_if agrees with decode on every word") {
  std::mt19937 rng(7);
  auto check_word = [](uint32_t w) {
    const DecodedInstr d = decode(w);
    const IfDecode p = decode_if(w);
    CHECK(p.rs1 == d.rs1);
    CHECK(p.rs2 == d.rs2);
    CHECK(p.rd == d.rd);
    CHECK(p.writes_rd == d.attrs.writes_rd);
    CHECK(p.is_load == d.attrs.is_load);
    CHECK(p.is_store == d.attrs.is_store);
  };
  for (int i = 0; i < 200000; ++i) check_word(rng());
  for (const Vector& v : kVectors) check_word(v.word);
}

TEST_CASE("decode is total and deterministic") {
  std::mt19937 rng(11);
  for (int i = 0; i < 50000; ++i) {
    const uint32_t w = rng();
    const DecodedInstr a = decode(w);
    const DecodedInstr b = decode(w);
    CHECK(a.kind == b.kind);
    CHECK(a.imm == b.imm);
    CHECK(a.raw == w);
  }
}

TEST_CASE("re-encoding a decoded instruction reproduces the raw word") {
  // Over the bundled corpus plus the vector table.
  for (const Benchmark& b : bundled_corpus()) {
    for (uint32_t w : b.imem.words) {
      const DecodedInstr d = decode(w);
      REQUIRE(d.kind != Op::Illegal);
      CHECK(encode(d) == w);
    }
  }
  for (const Vector& v : kVectors) CHECK(encode(decode(v.word)) == v.word);
}
