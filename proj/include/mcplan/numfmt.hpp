#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace mcplan {

/// Shortest round-trip decimal form of a double. Keeps emitted files
/// byte-stable across runs.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace mcplan
