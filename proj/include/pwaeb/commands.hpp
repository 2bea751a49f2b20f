#pragma once

#include "pwaeb/certify.hpp"
#include "pwaeb/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pwaeb::cli {

using io::Json;

enum ExitCode : int { kOk = 0, kNo = 1, kInputError = 2 };

struct Options {
  std::uint64_t seed = 0;
  Norm norm = Norm::Linf;
  std::size_t samples = 512;
  Rational box = 16;
  std::optional<Rational> grid_step;
  std::string theorem = "auto";
  bool fail_on_no = false;
  std::optional<std::size_t> piece;
};

struct Outcome {
  Json report;
  int exit_code = kOk;
};

/// A function argument names a JSON file or, when no such file exists, a
/// bundled fixture. A set argument works the same way; when it is omitted the
/// fixture's own set is used, or the full space for a plain file.
struct Resolved {
  pwa::MinMaxFunction function;
  certify::SetSpec set;
  std::string function_source;
  std::string set_source;
};

Resolved resolve(const std::string& function_arg, const std::optional<std::string>& set_arg);

Outcome cmd_analyze(const Resolved& in, const Options& opt);
Outcome cmd_certify(const Resolved& in, const Options& opt);
Outcome cmd_estimate_tau(const Resolved& in, const Options& opt);
Outcome cmd_examples_list();
/// "all" runs every fixture.
Outcome cmd_examples_run(const std::vector<std::string>& names);

/// Full command line. Errors go to `err`; the report goes to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pwaeb::cli
