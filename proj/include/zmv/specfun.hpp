// zmv: complex special functions.
//
// gamma()          Lanczos approximation, reflection for Re z < 1/2
// zeta()           Euler-Maclaurin reference oracle, valid for all s != 1;
//                  deliberately independent of the functional equation so
//                  downstream verification is non-circular
// eta()            Dirichlet eta via accelerated alternating series
// zeta_via_eta()   second, independent zeta oracle through
//                  eta(s) = (1 - 2^{1-s}) zeta(s)
// pow_real_complex()  x^w for real x > 0 on the principal branch
//
// All functions are pure and safe for concurrent use.

#ifndef ZMV_SPECFUN_HPP
#define ZMV_SPECFUN_HPP

#include "zmv/types.hpp"

namespace zmv::specfun {

// Fixed guard radii, exposed read-only so sweeps can predict error behavior.
inline constexpr double kGammaPoleGuard = 1e-9;   // around z = 0, -1, -2, ...
inline constexpr double kZetaPoleGuard  = 1e-3;   // around s = 1
inline constexpr double kEtaZeroGuard   = 1e-6;   // around s = 1 + 2*pi*i*k/ln 2

// Euler-Maclaurin evaluation parameters.
//
// zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//           + sum_{k=1}^{M} B_{2k}/(2k)! * (s)_{2k-1} * N^{-s-2k+1} + R_M
//
// with N = pivot_terms, M = correction_terms.  The error estimate is the
// first omitted correction term.
struct OracleConfig {
    int pivot_terms = 0;          // N; 0 selects an automatic |Im s|-based pivot
    int correction_terms = 14;    // M; at most kMaxCorrectionTerms
    double target_tol = 1e-12;    // absolute for |zeta| <= 1, relative beyond
};

// Bernoulli numbers B_2..B_30 are stored as corrections; B_32 is retained
// solely for the first-omitted-term error estimate.
inline constexpr int kMaxCorrectionTerms = 15;

// Gamma(z) by the 9-coefficient Lanczos sum (g = 7), reflection for
// Re z < 1/2.  Relative error <= ~2e-13 for |Re z|, |Im z| <= 50 away from
// poles.  Throws PoleError within kGammaPoleGuard of 0, -1, -2, ...
ComplexValue gamma(ComplexValue z);

// 1/Gamma(z): entire, never throws; exactly 0 at non-positive integers.
// Used where a gamma factor in a denominator must pass through its poles.
ComplexValue recip_gamma(ComplexValue z);

// Euler-Maclaurin zeta.  Valid for all s with |s - 1| > kZetaPoleGuard;
// |Im s| <= 50 supported (accuracy degrades beyond, by design).  Internally
// evaluated in quad precision: near Re s = -10 the scheme cancels ~11
// decimal digits, which would leave long double marginal.
// Throws PoleError near s = 1, NonConvergence when the correction tail
// cannot reach target_tol.
ComplexValue zeta(ComplexValue s, const OracleConfig& cfg);
ComplexValue zeta(ComplexValue s);  // automatic configuration

// Dirichlet eta(s) = sum (-1)^{n-1} n^{-s} for Re s > -2, by Borwein-style
// d-weight acceleration with the weight count adapted to |Im s| and Re s.
// Absolute error <= ~1e-12 on the stated domain.  Throws NonConvergence if
// the required weight count exceeds the work cap.
ComplexValue eta(ComplexValue s);

// zeta through the eta relation: eta(s) / (1 - 2^{1-s}).  Requires
// Re s > -2 and distance > kEtaZeroGuard from every zero 1 + 2*pi*i*k/ln 2
// of the prefactor (throws DivisionHazard inside the guard).
ComplexValue zeta_via_eta(ComplexValue s);

// x^w = exp(w ln x) for x > 0, principal real branch; exact for small
// integer w where the result is representable.
ComplexValue pow_real_complex(double x, ComplexValue w);

// sin(pi z) and cos(pi z) with the argument reduced in exact arithmetic
// before multiplication by pi, so real integer/half-integer z give exact
// zeros.  Shared by the reflection formula and the chi factor.
ComplexValue sin_pi(ComplexValue z);
ComplexValue cos_pi(ComplexValue z);

// Real-argument fast paths with the same exact reduction: integer x gives
// sin_pi(x) == 0 exactly, half-integer x gives cos_pi(x) == 0 exactly.
double sin_pi(double x);
double cos_pi(double x);

}  // namespace zmv::specfun

#endif  // ZMV_SPECFUN_HPP
