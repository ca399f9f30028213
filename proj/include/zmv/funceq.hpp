// zmv: the functional-equation layer.
//
// mellin_sin_closed   closed form -Gamma(-s) sin(pi s/2) a^s of the sine
//                     Mellin integral on -1 < Re s < 0
// chi                 chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s), evaluated
//                     in the pole-safe symmetric form
// fe_residual         one FUNC_EQ record: zeta(s) vs chi(s) zeta(1-s)
// series_rhs_partial  partial sums of the term-wise sine-integral series
// verify_chain        the full per-point equality chain as records
//
// All functions are pure and safe for concurrent use.

#ifndef ZMV_FUNCEQ_HPP
#define ZMV_FUNCEQ_HPP

#include <vector>

#include "zmv/mellin.hpp"
#include "zmv/types.hpp"

namespace zmv::funceq {

enum class StepKind { EQ1, TELESCOPE, INTERCHANGE, SERIES_SUM, FUNC_EQ };

const char* step_name(StepKind step);

// One verified equality.  pass holds when abs_err meets the absolute
// tolerance OR rel_err meets the relative one (near zeta zeros |lhs| is
// tiny and a pure relative test would be ill-conditioned).  converged is
// false when the underlying evaluation threw instead of returning
// (lhs/rhs are then NaN).
struct VerificationRecord {
    StepKind step = StepKind::FUNC_EQ;
    ComplexValue s;
    ComplexValue lhs;
    ComplexValue rhs;
    double abs_err = 0.0;  // |lhs - rhs|
    double rel_err = 0.0;  // abs_err / max(|lhs|, |rhs|, 1)
    long n_terms = 0;      // series terms / quadrature pieces consumed
    bool converged = false;
    bool pass = false;
};

// Rectangular sweep description plus the exclusion policy.  Points within
// exclusion_radius of s = 0, s = 1, the chi poles at odd s >= 3, or the
// zeros of 2^s - 1 and 2^{1-s} - 1 (s = 2 pi i k/ln 2 and 1 + 2 pi i k/ln 2,
// 0 < |k| <= 5) are skipped: every oracle precondition fails somewhere on
// that list.
struct GridSpec {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;
    int re_steps = 1;
    int im_steps = 1;
    double exclusion_radius = 0.1;
};

// True when s falls inside an exclusion disk of the given radius.
bool is_excluded(ComplexValue s, double radius);

// Assembles a record, deriving abs_err/rel_err and applying the pass policy
// (abs_err within abs_tol OR rel_err within rel_tol, and converged).  Shared
// by verify_chain and the CLI per-step sweeps so the policy lives once.
VerificationRecord make_record(StepKind step, ComplexValue s, ComplexValue lhs,
                               ComplexValue rhs, long n_terms, bool converged,
                               const ToleranceProfile& tols);

// The record a step yields when its evaluation threw: NaN values,
// converged = false, pass = false.
VerificationRecord failed_record(StepKind step, ComplexValue s,
                                 const ToleranceProfile& tols);

// -Gamma(-s) sin(pi s/2) a^s on -1 < Re s < 0 (margin 0.02), a > 0.
ComplexValue mellin_sin_closed(ComplexValue s, double a);

// chi(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2).  Finite everywhere
// except the odd integers s = 1, 3, 5, ... (PoleError); exactly 0 at
// s = 0, -2, -4, ... through the entire 1/Gamma.
ComplexValue chi(ComplexValue s);

// FUNC_EQ record at s: lhs = zeta(s), rhs = chi(s) zeta(1-s), both zeta
// values through the Euler-Maclaurin oracle.  Oracle errors propagate.
VerificationRecord fe_residual(ComplexValue s, const ToleranceProfile& tols = {});

// sum_{n=1}^{N} (1/(n pi)) [mellin_sin_closed(s, 4 n pi) -
// mellin_sin_closed(s, 2 n pi)] on -1 < Re s < 0 (margin 0.02).  The first
// 64 terms call mellin_sin_closed directly; beyond that the algebraically
// identical factored form
//   -Gamma(-s) sin(pi s/2) pi^{s-1} (4^s - 2^s) * sum n^{s-1}
// avoids two gamma evaluations per term.
ComplexValue series_rhs_partial(ComplexValue s, long n_terms);

// The per-point equality chain, mirroring the derivation order:
//   0 < Re s < 1:  EQ1, TELESCOPE, FUNC_EQ
//  -1 < Re s < 0:  INTERCHANGE (a = 2 pi and 4 pi), SERIES_SUM, FUNC_EQ
// Evaluation errors become failed records (converged = false) rather than
// aborting the chain.  Returns no records when s is excluded under
// grid_policy.exclusion_radius.  series_terms <= 0 selects the default
// min(cfg.max_intervals, 100000).
std::vector<VerificationRecord> verify_chain(ComplexValue s,
                                             const mellin::TruncationConfig& cfg,
                                             const GridSpec& grid_policy,
                                             const ToleranceProfile& tols = {},
                                             long series_terms = 0);

}  // namespace zmv::funceq

#endif  // ZMV_FUNCEQ_HPP
