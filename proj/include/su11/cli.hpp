#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "su11/ninej.hpp"

namespace su11 {

enum class OutFormat { Json, Csv, Text };

// One resolved invocation of the tool. A negative N means "not given";
// index members are optional because only some commands need them.
struct RunConfig {
  AlphaQuad alphas{0.5, 0.5, 0.5, 0.5};
  int N = -1;
  std::optional<int> m, n, x, y;
  NinejMethod method = NinejMethod::Oracle;
  std::optional<int> nodes;
  double tol = 1e-7;
  OutFormat format = OutFormat::Json;
  std::uint64_t seed = 12345;
};

// Each command writes one record or report to out and returns the process
// exit code for its own outcomes (validate returns 1 when a family fails).
// Bad input raises std::invalid_argument and unsatisfiable method
// preconditions raise std::domain_error; run_cli maps those to exit codes
// 2 and 3.
int cmd_ninej(const RunConfig& cfg, std::ostream& out);
int cmd_table(const RunConfig& cfg, std::ostream& out);
int cmd_validate(const RunConfig& cfg, std::ostream& out);

// Flag parsing and dispatch for the binary.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace su11
