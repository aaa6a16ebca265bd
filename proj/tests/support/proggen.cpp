#include "support/proggen.hpp"

#include <random>
#include <string>
#include <vector>

#include "rvp/encode.hpp"

namespace rvp::test {

namespace {

constexpr uint32_t kDmemBase = 0x8000;

class Generator {
 public:
  explicit Generator(uint64_t seed) : rng_(seed) {}

  Benchmark run() {
    p_.emit(lui(30, kDmemBase));
    // A few seeded values so early loads see nonzero data.
    for (unsigned r = 2; r <= 6; ++r)
      p_.emit(addi(r, 0, int32_t(pick(0, 4095) - 2048)));

    plan_functions();

    const int segments = pick(3, 9);
    for (int i = 0; i < segments; ++i) emit_segment(/*depth=*/0);

    p_.emit(ecall());
    for (const Func& f : funcs_) emit_function(f);

    Benchmark b;
    b.name = "gen" + std::to_string(seed_tag_);
    b.imem = MemImage::from_words(0, p_.words());
    b.dmem = MemImage{kDmemBase, {}};
    return b;
  }

 private:
  struct Func {
    Program::Label entry;
    int body_len;
  };

  std::mt19937_64 rng_;
  Program p_;
  std::vector<Func> funcs_;
  uint64_t seed_tag_ = 0;

  int pick(int lo, int hi) {
    return int(std::uniform_int_distribution<int>(lo, hi)(rng_));
  }
  bool chance(int percent) { return pick(1, 100) <= percent; }

  // Pool registers: rd in 2..27, rs in 0..27 minus x1
  // (x1/x28/x29/x30/x31 reserved).
  unsigned rand_rd() { return unsigned(pick(2, 27)); }
  unsigned rand_rs() {
    const int r = pick(0, 27);
    return unsigned(r == 1 ? 0 : r);
  }

  void plan_functions() {
    const int n = pick(0, 2);
    for (int i = 0; i < n; ++i) funcs_.push_back({p_.label(), pick(2, 5)});
  }

  void emit_alu() {
    const unsigned rd = rand_rd();
    const unsigned a = rand_rs();
    const unsigned b = rand_rs();
    switch (pick(0, 15)) {
      case 0: p_.emit(add(rd, a, b)); break;
      case 1: p_.emit(sub(rd, a, b)); break;
      case 2: p_.emit(sll(rd, a, b)); break;
      case 3: p_.emit(slt(rd, a, b)); break;
      case 4: p_.emit(sltu(rd, a, b)); break;
      case 5: p_.emit(xor_(rd, a, b)); break;
      case 6: p_.emit(srl(rd, a, b)); break;
      case 7: p_.emit(sra(rd, a, b)); break;
      case 8: p_.emit(or_(rd, a, b)); break;
      case 9: p_.emit(and_(rd, a, b)); break;
      case 10: p_.emit(addi(rd, a, pick(-2048, 2047))); break;
      case 11: p_.emit(xori(rd, a, pick(-2048, 2047))); break;
      case 12: p_.emit(slli(rd, a, unsigned(pick(0, 31)))); break;
      case 13: p_.emit(srai(rd, a, unsigned(pick(0, 31)))); break;
      case 14: p_.emit(lui(rd, uint32_t(pick(0, (1 << 20) - 1)) << 12)); break;
      case 15: p_.emit(auipc(rd, uint32_t(pick(0, 255)) << 12)); break;
    }
  }

  void emit_mem() {
    // Aligned traffic in the first 1 KB of dmem.
    const unsigned rd = rand_rd();
    const unsigned rs = rand_rs();
    switch (pick(0, 7)) {
      case 0: p_.emit(sw(rs, 30, pick(0, 255) * 4)); break;
      case 1: p_.emit(sh(rs, 30, pick(0, 511) * 2)); break;
      case 2: p_.emit(sb(rs, 30, pick(0, 1023))); break;
      case 3: p_.emit(lw(rd, 30, pick(0, 255) * 4)); break;
      case 4: p_.emit(lh(rd, 30, pick(0, 511) * 2)); break;
      case 5: p_.emit(lhu(rd, 30, pick(0, 511) * 2)); break;
      case 6: p_.emit(lb(rd, 30, pick(0, 1023))); break;
      case 7: p_.emit(lbu(rd, 30, pick(0, 1023))); break;
    }
    // Half the loads get an immediately dependent consumer.
    if (rd != 0 && chance(50)) p_.emit(add(rand_rd(), rd, rand_rs()));
  }

  void emit_straight(int n) {
    for (int i = 0; i < n; ++i) {
      if (chance(30)) emit_mem();
      else emit_alu();
    }
  }

  void emit_forward_branch() {
    const Op kinds[] = {Op::Beq, Op::Bne, Op::Blt, Op::Bge, Op::Bltu, Op::Bgeu};
    const auto skip = p_.label();
    p_.emit_branch(kinds[pick(0, 5)], rand_rs(), rand_rs(), skip);
    emit_straight(pick(1, 5));
    p_.bind(skip);
  }

  void emit_loop(int depth) {
    const unsigned ctr = depth == 0 ? 28 : 29;
    p_.emit(addi(ctr, 0, pick(1, 6)));
    const auto head = p_.label_here();
    emit_straight(pick(1, 4));
    if (depth == 0 && chance(35)) emit_loop(depth + 1);
    if (chance(40)) emit_forward_branch();
    p_.emit(addi(ctr, ctr, -1));
    p_.emit_branch(Op::Bne, ctr, 0, head);
  }

  void emit_call() {
    if (funcs_.empty()) {
      emit_straight(2);
      return;
    }
    p_.emit_jal(1, funcs_[size_t(pick(0, int(funcs_.size()) - 1))].entry);
  }

  void emit_segment(int depth) {
    switch (pick(0, 3)) {
      case 0: emit_straight(pick(4, 14)); break;
      case 1: emit_loop(depth); break;
      case 2: emit_forward_branch(); break;
      case 3: emit_call(); break;
    }
  }

  void emit_function(const Func& f) {
    p_.bind(f.entry);
    for (int i = 0; i < f.body_len; ++i) emit_alu();
    p_.emit(jalr(0, 1, 0));
  }

 public:
  void set_tag(uint64_t t) { seed_tag_ = t; }
};

}  // namespace

Benchmark generate_program(uint64_t seed) {
  Generator g(seed);
  g.set_tag(seed);
  return g.run();
}

}  // namespace rvp::test
