#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace essint {

/// Dispatch one command line (arguments after the program name) and write a
/// single JSON report to `out`.  Returns the process exit code:
///   0 — property verified / certificate found,
///   1 — property refuted / no certificate (still a valid run),
///   2 — input or precondition error (field-addressed diagnostics).
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace essint
