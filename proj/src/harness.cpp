#include "rvp/harness.hpp"

#include <cassert>
#include <cstdio>
#include <deque>
#include <sstream>

namespace rvp {

MemSystem mem_for(const Benchmark& bench, const MemLayout& layout) {
  MemSystem mem(layout);
  mem.load_imem(bench.imem);
  if (!bench.dmem.words.empty()) mem.load_dmem(bench.dmem);
  return mem;
}

ReportEntry make_report_entry(const std::string& benchmark,
                              const std::string& config, const RunStats& stats) {
  ReportEntry e;
  e.benchmark = benchmark;
  e.config = config;
  e.cycles = stats.cycles;
  e.retired = stats.retired > 0 ? stats.retired - 1 : 0;  // halting instruction excluded
  e.ipc = e.cycles ? double(e.retired) / double(e.cycles) : 0.0;
  e.hits = stats.pred_hits;
  e.misses = stats.pred_misses;
  const uint64_t total = e.hits + e.misses;
  e.has_rate = total > 0;
  e.hit_rate = total ? double(e.hits) / double(total) : 0.0;
  return e;
}

BenchmarkResult run_benchmark(const SimConfig& cfg, const Benchmark& bench,
                              const std::string& config_name,
                              std::ostream* trace_out) {
  BenchmarkResult res;
  Machine m(cfg, mem_for(bench, cfg.mem), bench.entry);
  m.trace_out = trace_out;
  try {
    res.status = m.run_to_halt();
  } catch (const SimFault& f) {
    res.fault = f;
  }
  res.stats = m.stats();
  res.entry = make_report_entry(bench.name, config_name, m.stats());
  res.console = m.mem().console();
  return res;
}

namespace {

LockstepResult run_lockstep(Machine& pipe, FuncSim& ref, uint64_t max_cycles) {
  LockstepResult res;
  uint64_t index = 0;
  bool diverged = false;

  pipe.commit_sink = [&](const CommitRecord& got) {
    if (diverged) return;
    CommitRecord want;
    if (ref.halted()) {
      diverged = true;
      res.message = "pipeline committed past the reference halt";
      res.index = index;
      res.pc = got.pc;
      return;
    }
    try {
      ref.step(want);
    } catch (const SimFault& rf) {
      // The reference faulted on an instruction the pipeline retired.
      diverged = true;
      res.index = index;
      res.pc = got.pc;
      res.message = std::string("reference faulted where the pipeline committed: ") + rf.what();
      return;
    }
    if (want.pc != got.pc || want.raw != got.raw) {
      diverged = true;
      res.index = index;
      res.pc = got.pc;
      res.reg = -1;
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "record %llu: pc/raw mismatch (pipeline %08x/%08x, reference %08x/%08x)",
                    static_cast<unsigned long long>(index), got.pc, got.raw,
                    want.pc, want.raw);
      res.message = buf;
      return;
    }
    for (int r = 0; r < 32; ++r) {
      if (want.regs_after[r] != got.regs_after[r]) {
        diverged = true;
        res.index = index;
        res.pc = got.pc;
        res.reg = r;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "record %llu pc=%08x: x%d differs (pipeline %08x, reference %08x)",
                      static_cast<unsigned long long>(index), got.pc, r,
                      got.regs_after[r], want.regs_after[r]);
        res.message = buf;
        return;
      }
    }
    ++index;
  };

  std::optional<SimFault> pipe_fault;
  RunStatus status = RunStatus::Halted;
  try {
    status = pipe.run_to_halt(max_cycles);
  } catch (const SimFault& f) {
    pipe_fault = f;
  }
  if (diverged) return res;

  if (pipe_fault) {
    // The reference must fault identically on its next step.
    try {
      CommitRecord tmp;
      if (!ref.halted()) ref.step(tmp);
      res.message = "pipeline faulted but reference did not: " +
                    std::string(pipe_fault->what());
      res.pc = pipe_fault->pc;
      res.index = index;
      return res;
    } catch (const SimFault& rf) {
      if (rf.kind == pipe_fault->kind && rf.pc == pipe_fault->pc) {
        res.pass = true;
        res.index = index;
        res.message = "both models faulted identically: " + std::string(rf.what());
        return res;
      }
      res.message = std::string("fault mismatch: pipeline ") + pipe_fault->what() +
                    ", reference " + rf.what();
      res.pc = pipe_fault->pc;
      res.index = index;
      return res;
    }
  }

  if (status != RunStatus::Halted) {
    res.message = "pipeline exhausted its cycle budget";
    res.index = index;
    return res;
  }
  if (!ref.halted()) {
    res.message = "pipeline halted before the reference";
    res.index = index;
    return res;
  }
  if (pipe.mem().console() != ref.mem().console()) {
    res.message = "console output differs";
    res.index = index;
    return res;
  }
  res.pass = true;
  res.index = index;
  res.message = "ok";
  return res;
}

}  // namespace

LockstepResult lockstep(const SimConfig& cfg, const Benchmark& bench) {
  Machine pipe(cfg, mem_for(bench, cfg.mem), bench.entry);
  FuncSim ref(mem_for(bench, cfg.mem), bench.entry);
  return run_lockstep(pipe, ref, cfg.max_cycles);
}

namespace {

std::string format_rate(bool has, double v) {
  if (!has) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string emit_report(const std::vector<ReportEntry>& entries, ReportFormat fmt) {
  assert(!entries.empty());
  std::ostringstream out;
  double ipc_sum = 0.0;
  for (const ReportEntry& e : entries) ipc_sum += e.ipc;
  const double ipc_avg = ipc_sum / double(entries.size());

  if (fmt == ReportFormat::Kv) {
    for (const ReportEntry& e : entries) {
      char rate[32];
      if (e.has_rate) std::snprintf(rate, sizeof(rate), "%.6f", e.hit_rate);
      else std::snprintf(rate, sizeof(rate), "-");
      char buf[256];
      std::snprintf(buf, sizeof(buf),
                    "benchmark=%s config=%s cycles=%llu retired=%llu ipc=%.6f "
                    "hits=%llu misses=%llu hit_rate=%s\n",
                    e.benchmark.c_str(), e.config.c_str(),
                    static_cast<unsigned long long>(e.cycles),
                    static_cast<unsigned long long>(e.retired), e.ipc,
                    static_cast<unsigned long long>(e.hits),
                    static_cast<unsigned long long>(e.misses), rate);
      out << buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "average_ipc=%.6f\n", ipc_avg);
    out << buf;
    return out.str();
  }

  // Text table mirroring the evaluation-table layout: IPC, prediction hit,
  // prediction miss, hit rate. retired excludes the halting instruction.
  char line[256];
  std::snprintf(line, sizeof(line), "%-18s %-12s %10s %10s %7s %10s %10s %9s\n",
                "benchmark", "config", "cycles", "retired", "ipc", "hit", "miss",
                "hit rate");
  out << line;
  for (const ReportEntry& e : entries) {
    std::snprintf(line, sizeof(line), "%-18s %-12s %10llu %10llu %7.3f %10llu %10llu %9s\n",
                  e.benchmark.c_str(), e.config.c_str(),
                  static_cast<unsigned long long>(e.cycles),
                  static_cast<unsigned long long>(e.retired), e.ipc,
                  static_cast<unsigned long long>(e.hits),
                  static_cast<unsigned long long>(e.misses),
                  format_rate(e.has_rate, e.hit_rate).c_str());
    out << line;
  }
  std::snprintf(line, sizeof(line), "%-18s %-12s %10s %10s %7.3f\n", "average", "-",
                "-", "-", ipc_avg);
  out << line;
  return out.str();
}

}  // namespace rvp
