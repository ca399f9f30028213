// zmv: run configuration and byte-stable report serialization.
//
// Reports are designed to be diffable goldens: fixed header, grid-order
// rows, shortest round-trip decimals, no locale dependence.

#ifndef ZMV_REPORT_HPP
#define ZMV_REPORT_HPP

#include <string>
#include <vector>

#include "zmv/funceq.hpp"
#include "zmv/mellin.hpp"
#include "zmv/types.hpp"

namespace zmv::report {

inline constexpr const char* kToolVersion = "1.0.0";

// The bit-exact first line of every CSV report.
inline constexpr const char* kCsvHeader =
    "step,s_re,s_im,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,n_terms,converged,pass";

enum class Command { eq1, telescope, interchange, sine_mellin, fe, chain, all };
enum class Format { csv, json };

const char* command_name(Command command);

// One fully resolved run: what to verify, where, how hard, and how to
// report it.  trunc.target_tol is derived as abs_tol / 4 by the flag
// parser so the quadrature budget leaves headroom under the record
// tolerance.
struct RunConfig {
    Command command = Command::fe;
    funceq::GridSpec grid{0.5, 0.5, 0.0, 0.0, 1, 1, 0.1};
    mellin::TruncationConfig trunc;
    double abs_tol = 1e-8;
    double rel_tol = 1e-9;
    long series_terms = 0;  // 0 selects min(trunc.max_intervals, 100000)
    Format format = Format::csv;
    std::string out_path;  // empty writes to standard output
    bool parallel = true;
};

// Shortest decimal that round-trips to the same double ("nan"/"inf" for
// non-finite values).  All report numbers go through this.
std::string format_double(double value);

// Serializes records in the order given.  CSV: kCsvHeader plus one row per
// record.  JSON: {"metadata": {tolerances, grid, tool_version},
// "records": [...]} with the same field names as the CSV columns.
std::string emit_report(const std::vector<funceq::VerificationRecord>& records,
                        const RunConfig& cfg);

}  // namespace zmv::report

#endif  // ZMV_REPORT_HPP
