#pragma once

#include "pwaeb/io.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pwaeb::report {

using io::Json;

inline constexpr std::string_view kToolName = "pwaeb";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

/// Digest of the compact dump, so equal content gives equal digests.
std::string digest(const Json& content);

struct Input {
  std::string role;    // "function", "set"
  std::string source;  // path or fixture name
  Json content;
};

struct Header {
  std::string command;
  std::uint64_t seed = 0;
  Norm norm = Norm::Linf;
};

/// Inputs are embedded in full so witnesses can be re-checked from the report.
Json make_report(const Header& h, const std::vector<Input>& inputs, const std::vector<certify::Certificate>& certs,
                 std::string summary);

/// Every Fails certificate (parts included) re-parsed and re-verified; returns
/// the paths of those that do not verify.
std::vector<std::string> reverify(const Json& report);

std::string render_text(const Json& report);

}  // namespace pwaeb::report
