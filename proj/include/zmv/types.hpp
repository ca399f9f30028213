// zmv: shared value types and error vocabulary.
//
// All public entry points traffic in double precision; individual routines
// may use wider arithmetic internally where cancellation demands it.

#ifndef ZMV_TYPES_HPP
#define ZMV_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace zmv {

// Carrier for s, zeta(s), gamma(z), chi(s), ... (a pair of finite doubles;
// non-error return paths never produce NaN/Inf components).
using ComplexValue = std::complex<double>;

// Thrown when an argument lands within the guard radius of a pole
// (gamma at non-positive integers, zeta at s = 1).
class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Thrown when a series/quadrature cannot meet its target tolerance within
// the configured work limit.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the eta-relation prefactor 1 - 2^{1-s} is too close to zero
// to divide by safely.
class DivisionHazard : public std::domain_error {
public:
    explicit DivisionHazard(const std::string& what) : std::domain_error(what) {}
};

// Thrown when an empirical bound check fails (partial-sum sup exceeding the
// configured uniform-boundedness constant).
class BoundExceeded : public std::runtime_error {
public:
    explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Run-level pass/fail policy: a comparison passes if EITHER the absolute or
// the relative tolerance is met (relative error is ill-conditioned near
// zeros of either side, absolute near large values).
struct ToleranceProfile {
    double abs_tol = 1e-8;
    double rel_tol = 1e-9;
};

}  // namespace zmv

#endif  // ZMV_TYPES_HPP
