#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace concordia {

/// Default cap on the ambient group order for operations that materialize
/// element sets.
inline constexpr std::uint64_t default_oracle_bound = 4096;

/// The element-set cap, overridable through CONCORDIA_ORACLE_BOUND.
inline std::uint64_t oracle_bound() {
  static const std::uint64_t bound = [] {
    const char* env = std::getenv("CONCORDIA_ORACLE_BOUND");
    if (env == nullptr || *env == '\0') return default_oracle_bound;
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return static_cast<std::uint64_t>(v);
    } catch (...) {
    }
    return default_oracle_bound;
  }();
  return bound;
}

}  // namespace concordia
