#ifndef QWALK_CLI_COMMANDS_HPP
#define QWALK_CLI_COMMANDS_HPP

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace qwalk::cli {

// Each command turns a RunConfig into the table it would emit. Parameter
// problems raise ParameterError, broken invariants raise InvariantViolation.

// Columns n, m, y, p over the reachable lattice m = -kn, -kn + 2, ..., kn.
Table cmd_walk(const RunConfig& config);
// Columns y, density on `samples` interior points, or a classical-branch marker.
Table cmd_limit(const RunConfig& config);
// Columns row, col, re, im of the output coin; Bloch vector and eta/theta in meta.
Table cmd_cavity(const RunConfig& config);
// Columns j, t, lambda_t, C.
Table cmd_resonance(const RunConfig& config);
// Columns n, ks, m2, limit_m2, abs_err; or n, variance, var_over_n at resonance.
Table cmd_converge(const RunConfig& config);

}  // namespace qwalk::cli

#endif  // QWALK_CLI_COMMANDS_HPP
