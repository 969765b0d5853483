#pragma once

// Command-line front end. Every command reads one problem file and reports
// `key: value` lines; when a command's document (a problem or an
// interpretation) goes to standard output, the report goes to standard error.
//
// Exit codes: 0 success (SAT for `solve`), 1 diagnostic or failed check,
// 2 I/O, usage or cap exceeded, 10 UNSAT.

#include <ostream>
#include <string>
#include <vector>

namespace msfmf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDiagnostic = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitUnsat = 10;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msfmf
