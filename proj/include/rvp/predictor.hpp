#pragma once

#include <array>
#include <cstdint>

namespace rvp {

enum class PredictorMode : uint8_t { None, Single, Pipelined };

const char* predictor_mode_name(PredictorMode mode);

struct BtbEntry {
  bool valid = false;
  uint32_t tag = 0;
  uint32_t target = 0;
  bool is_branch = false;  // conditional branch: consult the PHT; else taken unconditionally
};

struct Prediction {
  bool valid = false;      // pipelined mode: staging matched this fetch
  bool taken = false;      // w_btkn
  uint32_t target = 0;     // w_btb
  uint32_t pht_index = 0;  // index used; carried with the instruction for update
  bool btb_branch_hit = false;  // hit on a conditional-branch entry (drives the BHR shift)
};

// gshare + direct-mapped BTB. The same tables back the single-cycle
// configuration and the two-stage pipelined one; the pipelined form reads
// the BTB and latches the PC one cycle ahead of the fetch that consumes
// them (prestage), and keys BTB updates with branch pc - 4 so the early
// lookup still lands on the entry.
class Gshare {
 public:
  static constexpr unsigned kPhtEntries = 8192;
  static constexpr unsigned kBtbEntries = 512;
  static constexpr unsigned kBhrBits = 13;  // index width of the PHT
  static constexpr uint32_t kBhrMask = (1u << kBhrBits) - 1;

  explicit Gshare(PredictorMode mode);

  PredictorMode mode() const { return mode_; }

  // Single-cycle lookup: everything from the current fetch pc.
  Prediction predict_single(uint32_t pc) const;

  // First pipeline stage: BTB read and PC latch for the next cycle's fetch.
  void prestage(uint32_t pc);

  // Second stage: valid only when the staging pc + 4 matches this fetch pc;
  // otherwise the fetch falls through unpredicted.
  Prediction predict_pipelined(uint32_t pc) const;

  // Speculative history shift at fetch, for fetches the BTB identified as a
  // conditional branch.
  void speculate_history(bool predicted_taken);

  // Resolution-time update: counter always (conditional branches), BTB on
  // taken. Pipelined mode writes the BTB at branch_pc - 4.
  void update_branch(uint32_t branch_pc, bool taken, uint32_t target, uint32_t pht_index);
  void update_jump(uint32_t jump_pc, uint32_t target);  // BTB only

  // Misprediction recovery: overwrite the BHR with the corrected history.
  void rewrite_history(uint32_t bhr);

  static constexpr uint32_t shift_history(uint32_t bhr, bool bit) {
    return ((bhr << 1) | (bit ? 1u : 0u)) & kBhrMask;
  }

  uint32_t pht_index_of(uint32_t pc) const {
    return ((pc >> 2) ^ bhr_) & (kPhtEntries - 1);
  }
  static constexpr uint32_t btb_index_of(uint32_t pc) { return (pc >> 2) & (kBtbEntries - 1); }
  static constexpr uint32_t btb_tag_of(uint32_t pc) { return pc >> 11; }

  uint32_t bhr() const { return bhr_; }
  uint8_t pht(uint32_t index) const { return pht_[index]; }
  const BtbEntry& btb(uint32_t index) const { return btb_[index]; }
  uint32_t staged_pc() const { return staged_pc_; }

 private:
  PredictorMode mode_;
  uint32_t bhr_ = 0;
  std::array<uint8_t, kPhtEntries> pht_;  // 2-bit saturating counters
  std::array<BtbEntry, kBtbEntries> btb_;

  // Pipelining latches (r_btb, r_pcx).
  BtbEntry staged_btb_;
  uint32_t staged_pc_ = 0xFFFFFFFF;  // nothing staged yet

  BtbEntry read_btb(uint32_t pc) const;
  Prediction combine(const BtbEntry& entry, bool hit, uint32_t pht_index) const;
  void write_btb(uint32_t key_pc, uint32_t target, bool is_branch);
};

}  // namespace rvp
