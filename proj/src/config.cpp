#include "toy/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace toy {

namespace {

std::uint64_t from_environment() {
  const char* raw = std::getenv("TOY_ENUM_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultEnumerationCap;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used == std::string(raw).size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  return kDefaultEnumerationCap;
}

std::atomic<std::uint64_t>& cap_cell() {
  static std::atomic<std::uint64_t> cap{from_environment()};
  return cap;
}

}  // namespace

std::uint64_t enumeration_cap() { return cap_cell().load(std::memory_order_relaxed); }

void set_enumeration_cap(std::uint64_t cap) { cap_cell().store(cap, std::memory_order_relaxed); }

}  // namespace toy
