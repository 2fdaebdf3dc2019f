#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sciind {

inline constexpr std::string_view kVersion = "1.0.0";

/// FNV-1a, 64 bit. Identifies inputs in output headers; not a security hash.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

struct Provenance {
  std::vector<std::pair<std::string, std::string>> inputs;  // (name, digest)
  std::vector<std::pair<std::string, std::string>> flags;
};

}  // namespace sciind
