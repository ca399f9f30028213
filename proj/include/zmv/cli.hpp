// zmv: command-line front-end.
//
//   zmv verify <command> [flags]
//
// where <command> is one of eq1, telescope, interchange, sine-mellin, fe,
// chain, all.  Sweeps the requested verification over a rectangular grid
// of s values and emits a byte-stable CSV or JSON report.

#ifndef ZMV_CLI_HPP
#define ZMV_CLI_HPP

#include <string>
#include <vector>

#include "zmv/funceq.hpp"
#include "zmv/report.hpp"
#include "zmv/types.hpp"

namespace zmv::cli {

// The sweep points in report order: row-major, real axis outer, imaginary
// inner.  A single step pins the value at the range minimum.
std::vector<ComplexValue> grid_points(const funceq::GridSpec& grid);

// Records for one grid point under cfg.command.  Evaluation failures
// surface as failed records, never exceptions.  Pre: the grid has been
// validated against the command's strip (run() enforces this), so chain
// points lie inside one of the two strips.
std::vector<funceq::VerificationRecord> evaluate_point(ComplexValue s,
                                                       const report::RunConfig& cfg);

// Full CLI entry: parse, validate, sweep, report.  Returns the exit code:
//   0  every emitted record converged and passed tolerance
//   1  everything converged but at least one record failed tolerance
//   2  flag-parse or grid-validation failure (usage printed)
//   3  numerical non-convergence at >= 1 point, or report I/O failure
// args excludes the program name.
int run(std::vector<std::string> args);

// main()-shaped adapter: skips argv[0] and forwards.
int run(int argc, const char* const* argv);

}  // namespace zmv::cli

#endif  // ZMV_CLI_HPP
