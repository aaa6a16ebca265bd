#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rvp/config.hpp"
#include "rvp/funcsim.hpp"
#include "rvp/mem.hpp"
#include "rvp/pipeline.hpp"

namespace rvp {

// A runnable workload: instruction image, optional data image, entry point.
struct Benchmark {
  std::string name;
  MemImage imem;
  MemImage dmem;
  uint32_t entry = 0;
};

// Hand-assembled stand-in workloads (straight-line ALU, dependent chain,
// load-use ladder, nested loops, calls, branchy sort, byte/console traffic).
const std::vector<Benchmark>& bundled_corpus();

MemSystem mem_for(const Benchmark& bench, const MemLayout& layout);

// One row of the evaluation report. `retired` here excludes the halting
// instruction (a report convention; RunStats keeps the raw count).
struct ReportEntry {
  std::string benchmark;
  std::string config;
  uint64_t cycles = 0;
  uint64_t retired = 0;
  double ipc = 0.0;
  uint64_t hits = 0;
  uint64_t misses = 0;
  bool has_rate = false;  // false when the run retired no control transfers
  double hit_rate = 0.0;
};

ReportEntry make_report_entry(const std::string& benchmark,
                              const std::string& config, const RunStats& stats);

struct BenchmarkResult {
  ReportEntry entry;
  RunStats stats;
  RunStatus status = RunStatus::Halted;
  std::optional<SimFault> fault;
  std::string console;
};

BenchmarkResult run_benchmark(const SimConfig& cfg, const Benchmark& bench,
                              const std::string& config_name,
                              std::ostream* trace_out = nullptr);

// Lockstep comparison of the pipeline against the reference model on the
// same images. Divergence is a failing result, not an exception.
struct LockstepResult {
  bool pass = false;
  uint64_t index = 0;        // first diverging record (0-based)
  uint32_t pc = 0;
  int reg = -1;              // diverging register, -1 if pc/raw differ
  std::string message;
};

LockstepResult lockstep(const SimConfig& cfg, const Benchmark& bench);

enum class ReportFormat { Text, Kv };

// Renders entries plus an average-IPC row. Averages are recomputed from the
// entries, arithmetic mean across benchmarks.
std::string emit_report(const std::vector<ReportEntry>& entries, ReportFormat fmt);

}  // namespace rvp
