#include "rvp/predictor.hpp"

#include <cassert>

namespace rvp {

const char* predictor_mode_name(PredictorMode mode) {
  switch (mode) {
    case PredictorMode::None: return "none";
    case PredictorMode::Single: return "single";
    case PredictorMode::Pipelined: return "pipelined";
  }
  return "?";
}

Gshare::Gshare(PredictorMode mode) : mode_(mode) {
  pht_.fill(1);  // weakly not-taken
}

BtbEntry Gshare::read_btb(uint32_t pc) const {
  return btb_[btb_index_of(pc)];
}

Prediction Gshare::combine(const BtbEntry& entry, bool hit, uint32_t pht_index) const {
  Prediction p;
  p.valid = true;
  p.pht_index = pht_index;
  if (!hit) return p;
  p.btb_branch_hit = entry.is_branch;
  p.taken = entry.is_branch ? pht_[pht_index] >= 2 : true;
  p.target = entry.target;
  return p;
}

Prediction Gshare::predict_single(uint32_t pc) const {
  const BtbEntry entry = read_btb(pc);
  const bool hit = entry.valid && entry.tag == btb_tag_of(pc);
  return combine(entry, hit, pht_index_of(pc));
}

void Gshare::prestage(uint32_t pc) {
  staged_btb_ = read_btb(pc);
  staged_pc_ = pc;
}

Prediction Gshare::predict_pipelined(uint32_t pc) const {
  if (staged_pc_ + 4 != pc) {
    // The staging was prepared for a different fetch; prediction invalid,
    // fall through.
    Prediction p;
    p.pht_index = pht_index_of(staged_pc_);
    return p;
  }
  // The BTB data and the PC feeding the PHT index are one cycle old: the
  // entry for this instruction is keyed at pc - 4 == staged_pc.
  const bool hit = staged_btb_.valid && staged_btb_.tag == btb_tag_of(staged_pc_);
  return combine(staged_btb_, hit, pht_index_of(staged_pc_));
}

void Gshare::speculate_history(bool predicted_taken) {
  bhr_ = shift_history(bhr_, predicted_taken);
}

void Gshare::write_btb(uint32_t key_pc, uint32_t target, bool is_branch) {
  BtbEntry& e = btb_[btb_index_of(key_pc)];
  e.valid = true;
  e.tag = btb_tag_of(key_pc);
  e.target = target;
  e.is_branch = is_branch;
}

void Gshare::update_branch(uint32_t branch_pc, bool taken, uint32_t target,
                           uint32_t pht_index) {
  assert(pht_index < kPhtEntries);
  uint8_t& ctr = pht_[pht_index];
  if (taken) {
    if (ctr < 3) ++ctr;
  } else {
    if (ctr > 0) --ctr;
  }
  if (taken) {
    const uint32_t key = mode_ == PredictorMode::Pipelined ? branch_pc - 4 : branch_pc;
    write_btb(key, target, /*is_branch=*/true);
  }
}

void Gshare::update_jump(uint32_t jump_pc, uint32_t target) {
  const uint32_t key = mode_ == PredictorMode::Pipelined ? jump_pc - 4 : jump_pc;
  write_btb(key, target, /*is_branch=*/false);
}

void Gshare::rewrite_history(uint32_t bhr) { bhr_ = bhr & kBhrMask; }

}  // namespace rvp
