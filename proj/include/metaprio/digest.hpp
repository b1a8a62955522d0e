#pragma once

#include <cstdint>
#include <string>

namespace metaprio {

// FNV-1a 64-bit content hash, rendered as 16 hex chars. Used to key programs
// and artifacts so reruns are comparable byte for byte.
inline std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* hexdig = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hexdig[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace metaprio
