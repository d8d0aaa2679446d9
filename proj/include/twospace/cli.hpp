#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twospace {

/// Runs the command-line tool on the given arguments (program name
/// excluded). Writes reports to `out` and diagnostics to `err`.
///
/// Exit codes: 0 success, 1 validation failure, 2 I/O or parse error,
/// 3 unknown flag/strategy/variant.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace twospace
