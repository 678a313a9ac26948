#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uptail {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (JSON or CSV), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "start:stop:step" with the stop value included when the grid hits it
/// (within 1e−9 of a step); a bare number yields one point.
std::vector<double> parse_range(const std::string& text);

/// Writes the phase-diagram CSV (header delta,c,phi,argmin_label).
void emit_phase_diagram(int r, const std::vector<double>& deltas, const std::vector<double>& cs, std::ostream& out);

}  // namespace uptail
