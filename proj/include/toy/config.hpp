#pragma once

#include <cstdint>

namespace toy {

inline constexpr std::uint64_t kDefaultEnumerationCap = 65536;

/// Largest ontic space (d^{2n}) that explicit enumeration may touch. Read once
/// from TOY_ENUM_CAP, falling back to kDefaultEnumerationCap.
std::uint64_t enumeration_cap();

/// Overrides the cap for the rest of the process (tests, CLI flags).
void set_enumeration_cap(std::uint64_t cap);

}  // namespace toy
