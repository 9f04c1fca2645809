#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bethe/bethe_solver.hpp"
#include "bethe/spin.hpp"

namespace bethe::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kResourceCap = 3 };

/// Options shared by every command, after validation.
struct RunConfig {
  std::optional<Spin> spin;
  std::optional<int> length;
  std::optional<int> sector;
  bool csv = false;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::uint64_t cap = 0;
};

/// Runs one command line (without the program name). JSON or CSV goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bethe::cli
