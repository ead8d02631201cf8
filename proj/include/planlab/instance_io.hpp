#pragma once

// Line-oriented text format for instances and plans.
//
//   SASP 1
//   vars <n>
//   domain <d>
//   init <x_0> ... <x_{n-1}>
//   goal [<var>=<val> ...]
//   action <name> pre [<var>=<val> ...] eff [<var>=<val> ...]   (zero or more)
//   varnames <name_0> ... <name_{n-1}>                          (optional)
//
// Lines starting with '#' and blank lines are ignored. The varnames line is
// only written when some name differs from default_var_name().

#include <string>
#include <string_view>

#include "planlab/errors.hpp"
#include "planlab/sas.hpp"

namespace planlab {

/// Throws ParseError on any malformed input; never anything else.
Instance parse_instance(std::string_view text);

std::string serialize_instance(const Instance& instance);

/// One action name per line; blank lines and '#' lines are skipped.
Plan parse_plan(std::string_view text, const Instance& instance);

std::string serialize_plan(const Plan& plan, const Instance& instance);

/// Characters allowed in names: [A-Za-z0-9_.+-].
bool is_valid_name(std::string_view name);

/// Maps a free-form label onto the name charset: "a_i(b_j)" -> "a_i.b_j".
std::string sanitize_name(std::string_view raw);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace planlab
