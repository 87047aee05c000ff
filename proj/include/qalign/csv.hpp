#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include "qalign/rotation_basis.hpp"

namespace qalign {

// Decimal float with 17 significant digits, enough to round-trip a double.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Full bitstring as "10100..." with the clamped bit first.
inline std::string bits_to_string(const BitString& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

// Full bitstring packed with bit i at value 2^i (clamped bit = LSB), hex.
inline std::string bits_to_hex(const BitString& bits) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v |= 1ull << i;
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace qalign
