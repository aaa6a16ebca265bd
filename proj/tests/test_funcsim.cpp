#include <doctest.h>

#include "rvp/encode.hpp"
#include "rvp/funcsim.hpp"
#include "rvp/harness.hpp"

using namespace rvp;

namespace {

FuncSim sim_for(const std::vector<uint32_t>& words, uint32_t entry = 0,
                MemImage dmem = {}) {
  MemSystem mem;
  mem.load_imem(MemImage::from_words(entry, words));
  if (!dmem.words.empty()) mem.load_dmem(dmem);
  return FuncSim(std::move(mem), entry);
}

}  // namespace

TEST_CASE("addi executes and the pc advances") {
  FuncSim sim = sim_for({addi(5, 0, 7), ecall()}, 0x100);
  CommitRecord rec;
  CHECK(!sim.step(rec));
  CHECK(rec.pc == 0x100);
  CHECK(rec.regs_after[5] == 7);
  CHECK(sim.state().pc == 0x104);
}

TEST_CASE("taken beq with +0x2C reaches 0x130") {
  FuncSim sim = sim_for({nop(), enc_b(Op::Beq, 0, 0, 0x2C)}, 0x100);
  CommitRecord rec;
  sim.step(rec);
  sim.step(rec);
  CHECK(rec.pc == 0x104);
  CHECK(sim.state().pc == 0x130);
}

TEST_CASE("sra of 0x80000000 by 4") {
  FuncSim sim = sim_for({
      lui(1, 0x80000000), addi(2, 0, 4), sra(3, 1, 2), ecall()});
  std::vector<CommitRecord> log;
  sim.run_collect(10, log);
  CHECK(log[2].regs_after[3] == 0xF8000000);
}

TEST_CASE("writes to x0 are discarded") {
  FuncSim sim = sim_for({addi(0, 0, 123), jal(0, 4), ecall()});
  std::vector<CommitRecord> log;
  sim.run_collect(10, log);
  for (const CommitRecord& r : log) CHECK(r.regs_after[0] == 0);
}

TEST_CASE("immediate ecall yields a single-record log") {
  FuncSim sim = sim_for({ecall()});
  std::vector<CommitRecord> log;
  const FuncRunResult res = sim.run_collect(100, log);
  CHECK(res.halted);
  CHECK(res.retired == 1);
  CHECK(log.size() == 1);
  CHECK(log[0].raw == 0x00000073);
}

TEST_CASE("straight-line program commits at pc 0,4,...,0x24") {
  std::vector<uint32_t> words;
  for (int i = 0; i < 9; ++i) words.push_back(addi(unsigned(i + 1), 0, i));
  words.push_back(ecall());
  FuncSim sim = sim_for(words);
  std::vector<CommitRecord> log;
  const FuncRunResult res = sim.run_collect(100, log);
  CHECK(res.halted);
  REQUIRE(log.size() == 10);
  for (size_t i = 0; i < log.size(); ++i) CHECK(log[i].pc == 4 * i);
  CHECK(log.back().pc == 0x24);
}

TEST_CASE("loop benchmark retired count matches the analytic count") {
  // nested_loops: 1 init + 5 outer x (1 + 4 inner x 3 + 2) + ecall = 77.
  const Benchmark& b = bundled_corpus()[3];
  REQUIRE(b.name == "nested_loops");
  FuncSim sim(mem_for(b, MemLayout{}), b.entry);
  const FuncRunResult res = sim.run(100000);
  CHECK(res.halted);
  CHECK(res.retired == 77);
}

TEST_CASE("store then load round-trips") {
  const uint32_t base = MemLayout{}.dmem_base;
  FuncSim sim = sim_for({
      lui(1, base), lui(2, 0xABCDE000), addi(2, 2, 0x321),
      sw(2, 1, 8), lw(3, 1, 8), ecall()});
  std::vector<CommitRecord> log;
  sim.run_collect(10, log);
  CHECK(log[4].regs_after[3] == 0xABCDE321);
}

TEST_CASE("misaligned access faults with the offending pc") {
  FuncSim sim = sim_for({lui(1, 0x8000), lw(2, 1, 2), ecall()});
  CommitRecord rec;
  sim.step(rec);
  try {
    sim.step(rec);
    FAIL("expected a fault");
  } catch (const SimFault& f) {
    CHECK(f.kind == FaultKind::LoadMisaligned);
    CHECK(f.pc == 4);
    CHECK(f.addr == 0x8002);
  }
}

TEST_CASE("pc leaving instruction memory faults") {
  FuncSim sim = sim_for({jal(0, 0x10000)});  // jump far past the program
  CommitRecord rec;
  sim.step(rec);
  CHECK_THROWS_AS(sim.step(rec), SimFault);
}

TEST_CASE("ebreak and illegal instructions halt like ecall") {
  FuncSim a = sim_for({ebreak()});
  CommitRecord rec;
  CHECK(a.step(rec));
  FuncSim b = sim_for({0xFFFFFFFFu});
  CHECK(b.step(rec));
  CHECK(rec.regs_after[0] == 0);
}

TEST_CASE("jalr links and clears the target low bit") {
  FuncSim sim = sim_for({addi(1, 0, 0x101), jalr(5, 1, 0x10), ecall()});
  CommitRecord rec;
  sim.step(rec);
  sim.step(rec);
  CHECK(rec.regs_after[5] == 8);       // link = pc of jalr + 4
  CHECK(sim.state().pc == 0x110);      // (0x101 + 0x10) & ~1
}

TEST_CASE("determinism: identical inputs, identical commit logs") {
  for (const Benchmark& b : bundled_corpus()) {
    std::vector<CommitRecord> log1, log2;
    FuncSim s1(mem_for(b, MemLayout{}), b.entry);
    FuncSim s2(mem_for(b, MemLayout{}), b.entry);
    s1.run_collect(1 << 20, log1);
    s2.run_collect(1 << 20, log2);
    REQUIRE(log1.size() == log2.size());
    for (size_t i = 0; i < log1.size(); ++i)
      CHECK(format_commit(log1[i]) == format_commit(log2[i]));
  }
}

TEST_CASE("commit record text form is bit-exact") {
  CommitRecord rec;
  rec.pc = 0x100;
  rec.raw = 0x00700293;
  rec.regs_after[5] = 7;
  rec.regs_after[31] = 0xDEADBEEF;
  const std::string line = format_commit(rec);
  CHECK(line.substr(0, 17) == "00000100 00700293");
  CHECK(line.size() == 17 + 32 * 9);
  CHECK(line.substr(line.size() - 8) == "deadbeef");
  CHECK(line.find("00000007") == 17 + 5 * 9 + 1);  // x5 field, after its space
}
