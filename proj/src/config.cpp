#include "rvp/config.hpp"

namespace rvp {

std::optional<SimConfig> config_preset(std::string_view name) {
  SimConfig cfg;
  if (name == "rvp-simple") {
    cfg.predictor_mode = PredictorMode::Single;
    cfg.alu_impl = AluImpl::Mux;
    cfg.extend_impl = ExtendImpl::Mux;
  } else if (name == "rvp-optalu") {
    cfg.predictor_mode = PredictorMode::Single;
    cfg.alu_impl = AluImpl::OneHot;
    cfg.extend_impl = ExtendImpl::OneHot;
  } else if (name == "rvp-optif") {
    cfg.predictor_mode = PredictorMode::Pipelined;
    cfg.alu_impl = AluImpl::Mux;
    cfg.extend_impl = ExtendImpl::Mux;
  } else if (name == "rvp-optall") {
    cfg.predictor_mode = PredictorMode::Pipelined;
    cfg.alu_impl = AluImpl::OneHot;
    cfg.extend_impl = ExtendImpl::OneHot;
  } else if (name == "nobp") {
    cfg.predictor_mode = PredictorMode::None;
    cfg.alu_impl = AluImpl::Mux;
    cfg.extend_impl = ExtendImpl::Mux;
  } else {
    return std::nullopt;
  }
  return cfg;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "rvp-simple", "rvp-optalu", "rvp-optif", "rvp-optall", "nobp"};
  return names;
}

}  // namespace rvp
