#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ncg/errors.hpp"

namespace ncg {

inline constexpr const char* k_tool_version = "0.1.0";

// Shortest round-trip decimal form, locale-independent.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc())
    throw InternalError("failed to format double");
  return std::string(buf, ptr);
}

// Resolved configuration embedded at the top of every output file; key order
// is sorted, so identical configs serialize identically.
struct RunMeta {
  std::string command;
  uint64_t seed = 0;
  std::map<std::string, std::string> config;

  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    out.push_back("version " + std::string(k_tool_version));
    out.push_back("command " + command);
    out.push_back("seed " + std::to_string(seed));
    for (const auto& [k, v] : config) out.push_back(k + "=" + v);
    return out;
  }
};

}  // namespace ncg
