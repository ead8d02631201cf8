#pragma once

// plan_lab command line: classify, solve, validate, generate.
//
// Exit codes: 0 solvable / valid / ok, 1 not solvable / invalid, 2 parse or
// usage error, 3 solver does not apply to the instance, 4 search budget
// exhausted, 5 internal error.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "planlab/sas.hpp"

namespace planlab {

enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,
  kExitUsage = 2,
  kExitInapplicable = 3,
  kExitBudget = 4,
  kExitInternal = 5,
};

/// Solver picked by --solver auto: post-unique, zero-two, fo-mc or oracle.
/// fo-mc needs a unary instance and, when k is known, k <= kMaxSigma1K.
std::string auto_route(const RestrictionProfile& profile, std::optional<std::size_t> k = {});

/// args excludes the program name. JSON goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace planlab
