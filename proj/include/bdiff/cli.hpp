#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "bdiff/weights.hpp"

namespace bdiff::cli {

enum class Command { grey_global, grey_local, colour_global, colour_local, steady_state };

struct RunSpec {
  Command command = Command::grey_global;
  std::string input;
  std::string output;
  double a = 1.0;
  int n = 1;
  double t = 0.0;  // +inf selects the closed-form steady state
  std::optional<double> tau;
  double rho = 60.0;
  Kernel kernel = Kernel::box;
  double lambda = 0.5;
  std::optional<std::string> trace;
};

/// Parses a model time: a nonnegative decimal or `inf`.
std::optional<double> parse_time(const std::string& text);

/// Either a RunSpec, or the exit code to return immediately (help or a usage
/// error, already reported on `out`/`err`).
std::variant<RunSpec, int> parse(int argc, const char* const* argv, std::ostream& out,
                                 std::ostream& err);

/// Runs one pipeline. Returns 0 on success and 1 with a diagnostic on `err`
/// otherwise.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// parse + run.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bdiff::cli
