#pragma once

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace paircoh::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
};

/// Bad command-line input; the message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "a", "a+bi", "a-bi", "bi", "i", "-i" (a, b decimal or exponent form).
/// Throws std::invalid_argument on anything else, including nan and inf.
std::complex<double> parse_complex(std::string_view text);

/// Runs one invocation. `args` excludes the program name. Primary output goes
/// to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paircoh::cli
