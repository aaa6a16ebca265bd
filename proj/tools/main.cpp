// rvp-sim: cycle-accurate RV32I five-stage pipeline simulator with a
// functional reference model and lockstep verification.
//
// Exit codes: 0 success, 1 verification failure or faulted run, 2 usage/IO.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rvp/config.hpp"
#include "rvp/encode.hpp"
#include "rvp/harness.hpp"
#include "rvp/mem.hpp"
#include "rvp/pipeline.hpp"

namespace {

struct ConfigArgs {
  std::string preset = "rvp-simple";
  std::string predictor;
  std::string alu;
  std::string extend;
  uint64_t max_cycles = 0;
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("--config", args.preset,
                  "named configuration: rvp-simple, rvp-optalu, rvp-optif, rvp-optall, nobp")
      ->capture_default_str();
  cmd->add_option("--predictor", args.predictor, "override: none|single|pipelined");
  cmd->add_option("--alu", args.alu, "override: mux|onehot");
  cmd->add_option("--extend", args.extend, "override: mux|onehot");
  cmd->add_option("--max-cycles", args.max_cycles, "cycle budget (default 10M)");
}

bool resolve_config(const ConfigArgs& args, rvp::SimConfig& cfg) {
  auto preset = rvp::config_preset(args.preset);
  if (!preset) {
    std::cerr << "unknown config '" << args.preset << "'\n";
    return false;
  }
  cfg = *preset;
  if (!args.predictor.empty()) {
    if (args.predictor == "none") cfg.predictor_mode = rvp::PredictorMode::None;
    else if (args.predictor == "single") cfg.predictor_mode = rvp::PredictorMode::Single;
    else if (args.predictor == "pipelined") cfg.predictor_mode = rvp::PredictorMode::Pipelined;
    else { std::cerr << "bad --predictor value\n"; return false; }
  }
  auto impl = [](const std::string& v, bool& ok) {
    ok = v == "mux" || v == "onehot";
    return v == "onehot";
  };
  bool ok = true;
  if (!args.alu.empty()) {
    cfg.alu_impl = impl(args.alu, ok) ? rvp::AluImpl::OneHot : rvp::AluImpl::Mux;
    if (!ok) { std::cerr << "bad --alu value\n"; return false; }
  }
  if (!args.extend.empty()) {
    cfg.extend_impl = impl(args.extend, ok) ? rvp::ExtendImpl::OneHot : rvp::ExtendImpl::Mux;
    if (!ok) { std::cerr << "bad --extend value\n"; return false; }
  }
  if (args.max_cycles) cfg.max_cycles = args.max_cycles;
  return true;
}

std::vector<rvp::Benchmark> load_workloads(const std::string& imem_path,
                                           const std::string& dmem_path,
                                           const rvp::MemLayout& layout) {
  if (imem_path.empty()) return rvp::bundled_corpus();
  rvp::Benchmark b;
  b.name = imem_path;
  b.imem = rvp::MemImage::from_file(imem_path, layout.imem_base);
  if (!dmem_path.empty())
    b.dmem = rvp::MemImage::from_file(dmem_path, layout.dmem_base);
  else
    b.dmem = rvp::MemImage{layout.dmem_base, {}};
  return {b};
}

int cmd_run(const ConfigArgs& cargs, const std::string& imem_path,
            const std::string& dmem_path, const std::string& trace_path,
            const std::string& report_fmt, bool echo) {
  rvp::SimConfig cfg;
  if (!resolve_config(cargs, cfg)) return 2;
  std::vector<rvp::Benchmark> works;
  try {
    works = load_workloads(imem_path, dmem_path, cfg.mem);
  } catch (const rvp::SimFault& f) {
    std::cerr << "cannot load images: " << f.what() << "\n";
    return 2;
  }

  std::ofstream trace_file;
  std::ostream* trace = nullptr;
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    if (!trace_file) {
      std::cerr << "cannot open trace file " << trace_path << "\n";
      return 2;
    }
    trace = &trace_file;
    cfg.trace = true;
  }

  std::vector<rvp::ReportEntry> entries;
  bool any_fault = false;
  for (const rvp::Benchmark& b : works) {
    rvp::Machine m(cfg, rvp::mem_for(b, cfg.mem), b.entry);
    m.mem().echo_console = echo;
    m.trace_out = trace;
    rvp::RunStatus status = rvp::RunStatus::Halted;
    try {
      status = m.run_to_halt();
    } catch (const rvp::SimFault& f) {
      std::cerr << b.name << ": simulation fault: " << f.what() << "\n";
      any_fault = true;
      continue;
    }
    if (status != rvp::RunStatus::Halted) {
      std::cerr << b.name << ": did not halt within " << cfg.max_cycles << " cycles\n";
      any_fault = true;
      continue;
    }
    entries.push_back(rvp::make_report_entry(b.name, cargs.preset, m.stats()));
  }
  if (!entries.empty()) {
    std::cout << "# retired excludes the halting instruction\n";
    std::cout << rvp::emit_report(entries, report_fmt == "kv" ? rvp::ReportFormat::Kv
                                                              : rvp::ReportFormat::Text);
  }
  return any_fault ? 1 : 0;
}

int cmd_verify(const ConfigArgs& cargs, const std::string& imem_path,
               const std::string& dmem_path, bool all_presets) {
  rvp::SimConfig base;
  if (!resolve_config(cargs, base)) return 2;
  std::vector<rvp::Benchmark> works;
  try {
    works = load_workloads(imem_path, dmem_path, base.mem);
  } catch (const rvp::SimFault& f) {
    std::cerr << "cannot load images: " << f.what() << "\n";
    return 2;
  }

  std::vector<std::pair<std::string, rvp::SimConfig>> configs;
  if (all_presets) {
    for (const std::string& name : rvp::preset_names()) {
      rvp::SimConfig cfg = *rvp::config_preset(name);
      cfg.max_cycles = base.max_cycles;
      configs.emplace_back(name, cfg);
    }
  } else {
    configs.emplace_back(cargs.preset, base);
  }

  bool all_pass = true;
  for (const auto& [name, cfg] : configs) {
    for (const rvp::Benchmark& b : works) {
      const rvp::LockstepResult r = rvp::lockstep(cfg, b);
      std::printf("%-6s %-12s %-18s %s\n", r.pass ? "PASS" : "FAIL", name.c_str(),
                  b.name.c_str(), r.pass ? "" : r.message.c_str());
      all_pass = all_pass && r.pass;
    }
  }
  return all_pass ? 0 : 1;
}

int cmd_bench(const std::string& report_fmt, const std::string& imem_path,
              const std::string& dmem_path) {
  rvp::SimConfig base;
  std::vector<rvp::Benchmark> works;
  try {
    works = load_workloads(imem_path, dmem_path, base.mem);
  } catch (const rvp::SimFault& f) {
    std::cerr << "cannot load images: " << f.what() << "\n";
    return 2;
  }
  bool any_fault = false;
  std::cout << "# retired excludes the halting instruction\n";
  for (const std::string& name : rvp::preset_names()) {
    const rvp::SimConfig cfg = *rvp::config_preset(name);
    std::vector<rvp::ReportEntry> entries;
    for (const rvp::Benchmark& b : works) {
      const rvp::BenchmarkResult r = rvp::run_benchmark(cfg, b, name);
      if (r.fault || r.status != rvp::RunStatus::Halted) {
        std::cerr << b.name << " under " << name << ": failed\n";
        any_fault = true;
        continue;
      }
      entries.push_back(r.entry);
    }
    if (!entries.empty())
      std::cout << rvp::emit_report(entries, report_fmt == "kv" ? rvp::ReportFormat::Kv
                                                                : rvp::ReportFormat::Text)
                << "\n";
  }
  return any_fault ? 1 : 0;
}

int cmd_corpus(const std::string& out_dir) {
  for (const rvp::Benchmark& b : rvp::bundled_corpus()) {
    const std::string imem_path = out_dir + "/" + b.name + ".imem.hex";
    std::ofstream imem(imem_path);
    if (!imem) {
      std::cerr << "cannot write " << imem_path << "\n";
      return 2;
    }
    b.imem.write_hex(imem);
    if (!b.dmem.words.empty()) {
      std::ofstream dmem(out_dir + "/" + b.name + ".dmem.hex");
      b.dmem.write_hex(dmem);
    }
    std::cout << b.name << ": " << b.imem.words.size() << " instruction words\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycle-accurate RV32I five-stage pipeline simulator"};
  app.require_subcommand(1);

  ConfigArgs cargs;
  std::string imem_path, dmem_path, trace_path, report_fmt = "text", out_dir = ".";
  bool echo = false;
  bool all_presets = true;

  CLI::App* run = app.add_subcommand("run", "run the pipeline and report statistics");
  add_config_options(run, cargs);
  run->add_option("--imem", imem_path, "instruction image (.hex or raw binary); default: bundled corpus");
  run->add_option("--dmem", dmem_path, "data image (.hex or raw binary)");
  run->add_option("--trace", trace_path, "write a per-cycle trace to this file");
  run->add_option("--report", report_fmt, "text|kv")->capture_default_str();
  run->add_flag("--echo-console", echo, "mirror console bytes to stdout");

  CLI::App* verify = app.add_subcommand(
      "verify", "lockstep-compare pipeline and reference on the corpus");
  ConfigArgs vargs;
  add_config_options(verify, vargs);
  verify->add_option("--imem", imem_path, "instruction image; default: bundled corpus");
  verify->add_option("--dmem", dmem_path, "data image");
  verify->add_flag("!--single-config", all_presets,
                   "verify only the configuration given by --config");

  CLI::App* bench = app.add_subcommand("bench", "full corpus x configuration matrix");
  bench->add_option("--report", report_fmt, "text|kv")->capture_default_str();
  bench->add_option("--imem", imem_path, "instruction image; default: bundled corpus");
  bench->add_option("--dmem", dmem_path, "data image");

  CLI::App* corpus = app.add_subcommand("corpus", "write the bundled corpus as hex images");
  corpus->add_option("--out", out_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed())
    return cmd_run(cargs, imem_path, dmem_path, trace_path, report_fmt, echo);
  if (verify->parsed())
    return cmd_verify(vargs, imem_path, dmem_path, all_presets);
  if (bench->parsed())
    return cmd_bench(report_fmt, imem_path, dmem_path);
  if (corpus->parsed())
    return cmd_corpus(out_dir);
  return 2;
}
