#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvp/mem.hpp"
#include "rvp/predictor.hpp"

namespace rvp {

enum class AluImpl : uint8_t { Mux, OneHot };
enum class ExtendImpl : uint8_t { Mux, OneHot };

struct SimConfig {
  PredictorMode predictor_mode = PredictorMode::Single;
  AluImpl alu_impl = AluImpl::Mux;
  ExtendImpl extend_impl = ExtendImpl::Mux;
  MemLayout mem;
  uint64_t max_cycles = 10'000'000;
  bool trace = false;

  // Fault-injection fixture: operands come straight from the register file,
  // bypassing both forwarding paths. Lockstep must catch this.
  bool debug_no_forwarding = false;
};

// Named configurations:
//   rvp-simple : single-cycle prediction, mux ALU, mux align/extend
//   rvp-optalu : single-cycle prediction, one-hot ALU, one-hot align/extend
//   rvp-optif  : pipelined prediction, mux ALU, mux align/extend
//   rvp-optall : pipelined prediction, one-hot ALU, one-hot align/extend
//   nobp       : no prediction (always fall-through), mux datapath
std::optional<SimConfig> config_preset(std::string_view name);
const std::vector<std::string>& preset_names();

}  // namespace rvp
