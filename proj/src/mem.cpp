#include "rvp/mem.hpp"

#include <cassert>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rvp {

namespace {

bool is_pow2(uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::string fault_message(FaultKind kind, uint32_t addr, uint32_t pc, uint64_t cycle) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s addr=0x%08x pc=0x%08x cycle=%llu",
                fault_name(kind), addr, pc, static_cast<unsigned long long>(cycle));
  return buf;
}

}  // namespace

const char* fault_name(FaultKind kind) {
  switch (kind) {
    case FaultKind::FetchMisaligned: return "fetch-misaligned";
    case FaultKind::FetchOutOfRange: return "fetch-out-of-range";
    case FaultKind::LoadMisaligned: return "load-misaligned";
    case FaultKind::LoadUnmapped: return "load-unmapped";
    case FaultKind::StoreMisaligned: return "store-misaligned";
    case FaultKind::StoreUnmapped: return "store-unmapped";
    case FaultKind::StoreToInstrMem: return "store-to-instr-mem";
    case FaultKind::ImageTooLarge: return "image-too-large";
    case FaultKind::BadImageFile: return "bad-image-file";
  }
  return "unknown-fault";
}

SimFault::SimFault(FaultKind kind, uint32_t addr, uint32_t pc, uint64_t cycle)
    : std::runtime_error(fault_message(kind, addr, pc, cycle)),
      kind(kind), addr(addr), pc(pc), cycle(cycle) {}

MemImage MemImage::from_words(uint32_t origin, std::vector<uint32_t> words) {
  assert(origin % 4 == 0);
  return MemImage{origin, std::move(words)};
}

MemImage MemImage::from_hex(std::istream& in, uint32_t origin) {
  MemImage img;
  img.origin = origin;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Trim trailing CR and surrounding blanks.
    while (!line.empty() && (line.back() == '\r' || std::isspace(uint8_t(line.back()))))
      line.pop_back();
    size_t start = 0;
    while (start < line.size() && std::isspace(uint8_t(line[start]))) ++start;
    if (start == line.size()) continue;
    const std::string tok = line.substr(start);
    if (tok.size() != 8) throw SimFault(FaultKind::BadImageFile, uint32_t(lineno));
    uint32_t w = 0;
    for (char c : tok) {
      int nib;
      if (c >= '0' && c <= '9') nib = c - '0';
      else if (c >= 'a' && c <= 'f') nib = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') nib = c - 'A' + 10;
      else throw SimFault(FaultKind::BadImageFile, uint32_t(lineno));
      w = (w << 4) | uint32_t(nib);
    }
    img.words.push_back(w);
  }
  return img;
}

MemImage MemImage::from_binary(std::istream& in, uint32_t origin) {
  MemImage img;
  img.origin = origin;
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  img.words.reserve((bytes.size() + 3) / 4);
  for (size_t i = 0; i < bytes.size(); i += 4) {
    uint32_t w = 0;
    for (size_t b = 0; b < 4 && i + b < bytes.size(); ++b)
      w |= uint32_t(uint8_t(bytes[i + b])) << (8 * b);
    img.words.push_back(w);
  }
  return img;
}

MemImage MemImage::from_file(const std::string& path, uint32_t origin) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimFault(FaultKind::BadImageFile, 0);
  const bool hex = path.size() >= 4 && path.compare(path.size() - 4, 4, ".hex") == 0;
  return hex ? from_hex(in, origin) : from_binary(in, origin);
}

void MemImage::write_hex(std::ostream& out) const {
  char buf[16];
  for (uint32_t w : words) {
    std::snprintf(buf, sizeof(buf), "%08x\n", w);
    out << buf;
  }
}

MemSystem::MemSystem(MemLayout layout) : layout_(layout) {
  assert(is_pow2(layout_.imem_size) && is_pow2(layout_.dmem_size));
  imem_.assign(layout_.imem_size / 4, 0);
  dmem_.assign(layout_.dmem_size / 4, 0);
}

void MemSystem::load_imem(const MemImage& image) {
  if (image.origin < layout_.imem_base) throw SimFault(FaultKind::ImageTooLarge, image.origin);
  const uint32_t off = image.origin - layout_.imem_base;
  if (off % 4 != 0 || off / 4 + image.words.size() > imem_.size())
    throw SimFault(FaultKind::ImageTooLarge, image.origin);
  for (size_t i = 0; i < image.words.size(); ++i) imem_[off / 4 + i] = image.words[i];
}

void MemSystem::load_dmem(const MemImage& image) {
  if (image.origin < layout_.dmem_base) throw SimFault(FaultKind::ImageTooLarge, image.origin);
  const uint32_t off = image.origin - layout_.dmem_base;
  if (off % 4 != 0 || off / 4 + image.words.size() > dmem_.size())
    throw SimFault(FaultKind::ImageTooLarge, image.origin);
  for (size_t i = 0; i < image.words.size(); ++i) dmem_[off / 4 + i] = image.words[i];
}

bool MemSystem::in_imem_range(uint32_t addr) const {
  return addr >= layout_.imem_base && addr - layout_.imem_base < layout_.imem_size;
}

bool MemSystem::in_dmem(uint32_t addr, unsigned width) const {
  return addr >= layout_.dmem_base &&
         addr - layout_.dmem_base <= layout_.dmem_size - width;
}

std::optional<uint32_t> MemSystem::fetch(uint32_t pc) const {
  if (pc % 4 != 0 || !in_imem_range(pc)) return std::nullopt;
  return imem_[(pc - layout_.imem_base) / 4];
}

FaultKind MemSystem::fetch_fault_kind(uint32_t pc) const {
  return pc % 4 != 0 ? FaultKind::FetchMisaligned : FaultKind::FetchOutOfRange;
}

uint32_t MemSystem::load_word(uint32_t addr, unsigned width) const {
  assert(width == 1 || width == 2 || width == 4);
  if (addr % width != 0) throw SimFault(FaultKind::LoadMisaligned, addr);
  if (!in_dmem(addr, width)) throw SimFault(FaultKind::LoadUnmapped, addr);
  return dmem_[(addr - layout_.dmem_base) / 4];
}

void MemSystem::store(uint32_t addr, unsigned width, uint32_t value) {
  assert(width == 1 || width == 2 || width == 4);
  if (addr % width != 0) throw SimFault(FaultKind::StoreMisaligned, addr);
  if (width == 1 && addr == layout_.console_addr) {
    const char c = char(value & 0xFF);
    console_.push_back(c);
    if (echo_console) std::fputc(c, stdout);
    return;
  }
  if (!in_dmem(addr, width)) {
    throw SimFault(in_imem_range(addr) ? FaultKind::StoreToInstrMem
                                       : FaultKind::StoreUnmapped, addr);
  }
  const uint32_t index = (addr - layout_.dmem_base) / 4;
  const unsigned shift = 8 * (addr & 3);
  const uint32_t mask = width == 4 ? 0xFFFFFFFFu : width == 2 ? 0xFFFFu : 0xFFu;
  dmem_[index] = (dmem_[index] & ~(mask << shift)) | ((value & mask) << shift);
}

}  // namespace rvp
