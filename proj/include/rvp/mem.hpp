#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rvp {

enum class FaultKind : uint8_t {
  FetchMisaligned,
  FetchOutOfRange,
  LoadMisaligned,
  LoadUnmapped,
  StoreMisaligned,
  StoreUnmapped,
  StoreToInstrMem,
  ImageTooLarge,
  BadImageFile,
};

const char* fault_name(FaultKind kind);

// Raised on any memory or fetch violation. Both simulators fault on the same
// instruction with the same kind, so lockstep compares faults too. The
// pipeline fills in the cycle number when it rethrows.
struct SimFault : std::runtime_error {
  SimFault(FaultKind kind, uint32_t addr, uint32_t pc = 0, uint64_t cycle = 0);
  FaultKind kind;
  uint32_t addr;
  uint32_t pc;
  uint64_t cycle;
};

// A loadable chunk of memory: `words` placed little-endian from `origin`.
struct MemImage {
  uint32_t origin = 0;
  std::vector<uint32_t> words;

  static MemImage from_words(uint32_t origin, std::vector<uint32_t> words);
  static MemImage from_hex(std::istream& in, uint32_t origin = 0);       // one 8-hex-digit word per line
  static MemImage from_binary(std::istream& in, uint32_t origin = 0);    // raw little-endian bytes
  static MemImage from_file(const std::string& path, uint32_t origin = 0);  // .hex => text, else raw

  void write_hex(std::ostream& out) const;
};

struct MemLayout {
  uint32_t imem_base = 0x00000000;
  uint32_t imem_size = 32 * 1024;
  uint32_t dmem_base = 0x00008000;
  uint32_t dmem_size = 32 * 1024;
  uint32_t console_addr = 0xF0000000;  // byte-write-only console
};

// Harvard-style memory: a fetch-only instruction memory, a data memory, and
// a one-byte console port standing in for the serial output. Data accesses
// into the instruction memory range fault.
class MemSystem {
 public:
  explicit MemSystem(MemLayout layout = {});

  const MemLayout& layout() const { return layout_; }

  void load_imem(const MemImage& image);
  void load_dmem(const MemImage& image);

  // Instruction fetch. nullopt when pc is misaligned or outside imem; the
  // pipeline defers that fault until the slot would commit.
  std::optional<uint32_t> fetch(uint32_t pc) const;
  FaultKind fetch_fault_kind(uint32_t pc) const;

  // Validates alignment and mapping for a load of `width` bytes at `addr`,
  // then returns the aligned 32-bit word containing it. Extraction and
  // extension are the caller's business.
  uint32_t load_word(uint32_t addr, unsigned width) const;

  // Byte/half/word store. A 1-byte store at the console address appends to
  // the console buffer instead of touching dmem.
  void store(uint32_t addr, unsigned width, uint32_t value);

  const std::string& console() const { return console_; }
  bool echo_console = false;  // mirror console bytes to stdout

  // Direct word access for tests and loaders (dmem offsets, not addresses).
  uint32_t imem_word(size_t index) const { return imem_[index]; }
  uint32_t dmem_word(size_t index) const { return dmem_[index]; }

 private:
  MemLayout layout_;
  std::vector<uint32_t> imem_;
  std::vector<uint32_t> dmem_;
  std::string console_;

  bool in_dmem(uint32_t addr, unsigned width) const;
  bool in_imem_range(uint32_t addr) const;
};

}  // namespace rvp
