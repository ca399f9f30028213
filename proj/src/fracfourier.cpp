#include "zmv/fracfourier.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "zmv/types.hpp"

namespace zmv::fracfourier {

namespace {

// Default grid offset: frac(1/2 + 1/sqrt(2)).  Irrational enough that no
// grid point (j + offset)/G is a dyadic rational.
constexpr double kDefaultOffset = 0.2071067811865476;

// sin(2 pi f) for a fractional part f in [0, 1), reduced in exact
// arithmetic so f = 0 and f = 1/2 give exactly 0.  Double precision (not
// the long-double path in specfun) because the sup scan evaluates this
// ~1e8 times and per-term accuracy of 1 ulp is ample here.
inline double sin_two_pi(double f) {
    const double r = std::remainder(2.0 * f, 2.0);  // exact; r in [-1, 1]
    const double a = std::fabs(r);
    const double v = (a <= 0.5) ? std::sin(M_PI * a) : std::sin(M_PI * (1.0 - a));
    return r < 0.0 ? -v : v;
}

// One Fourier term (sin 4 n pi x - sin 2 n pi x)/(n pi).  The arguments are
// reduced modulo 1 before the sine so that large n*x costs no precision.
inline double term(double n, double x) {
    const double f2 = 2.0 * n * x;
    const double f1 = n * x;
    return (sin_two_pi(f2 - std::floor(f2)) - sin_two_pi(f1 - std::floor(f1))) /
           (n * M_PI);
}

double grid_offset() {
    if (const char* env = std::getenv("ZMV_SEED_OFFSET")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && std::isfinite(v) && v > 0.0 && v < 1.0) return v;
    }
    return kDefaultOffset;
}

}  // namespace

double rho(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("rho: requires finite x >= 0");
    }
    const double r = x - std::floor(x);
    // floor rounding at huge x can only make r == 1.0 transiently; fold it.
    return r < 1.0 ? r : 0.0;
}

double telescoped(double x) {
    if (!(x > 0.0) || !std::isfinite(2.0 * x)) {
        throw std::domain_error("telescoped: requires finite x > 0");
    }
    return rho(x) - rho(2.0 * x);
}

double fourier_partial_sum(const PartialSumSpec& spec) {
    if (spec.n_terms < 1) {
        throw std::domain_error("fourier_partial_sum: n_terms must be >= 1");
    }
    if (!(spec.x > 0.0) || !std::isfinite(spec.x)) {
        throw std::domain_error("fourier_partial_sum: requires finite x > 0");
    }
    double sum = 0.0, comp = 0.0;
    for (long n = 1; n <= spec.n_terms; ++n) {
        const double y = term(static_cast<double>(n), spec.x) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double partial_sum_sup(long n_max, int grid_points, double bound) {
    if (n_max < 1) {
        throw std::domain_error("partial_sum_sup: n_max must be >= 1");
    }
    if (grid_points < 256) {
        throw std::domain_error("partial_sum_sup: grid_points must be >= 256");
    }
    const double offset = grid_offset();
    double sup = 0.0;
    for (int j = 0; j < grid_points; ++j) {
        const double x = (j + offset) / grid_points;
        double sum = 0.0, comp = 0.0;
        for (long n = 1; n <= n_max; ++n) {
            const double y = term(static_cast<double>(n), x) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            sup = std::max(sup, std::abs(sum));
        }
    }
    if (sup > bound) {
        throw BoundExceeded("partial_sum_sup: sup " + std::to_string(sup) +
                            " exceeds bound " + std::to_string(bound));
    }
    return sup;
}

}  // namespace zmv::fracfourier
