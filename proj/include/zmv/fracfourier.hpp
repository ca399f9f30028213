// zmv: the fractional part, its dilation-by-2 difference, and the Fourier
// sine partial sums of that difference.
//
// rho(x)               fractional part, in [0, 1)
// telescoped(x)        rho(x) - rho(2x)
// fourier_partial_sum  S_N(x) = sum_{n<=N} (sin 4n pi x - sin 2n pi x)/(n pi)
// partial_sum_sup      running sup of |S_N(x)| over N and an offset grid
//
// All sine evaluations reduce the argument modulo the period in exact
// arithmetic first, so S_N vanishes identically at half-integers (the jump
// midpoints) instead of accumulating reduction noise.
//
// All functions are pure and safe for concurrent use.

#ifndef ZMV_FRACFOURIER_HPP
#define ZMV_FRACFOURIER_HPP

namespace zmv::fracfourier {

// A single partial-sum request: N summation terms at the point x.
struct PartialSumSpec {
    long n_terms = 1;  // N >= 1
    double x = 0.0;    // x > 0
};

// Fractional part x - floor(x) for finite x >= 0.  Throws std::domain_error
// outside that domain.
double rho(double x);

// rho(x) - rho(2x) for finite x > 0; lies in (-1/2, 1/2].  Doubling a
// double is exact, so no further care is needed.
double telescoped(double x);

// Partial sum of the Fourier sine expansion of telescoped(), summed in
// ascending n with compensated accumulation for platform-independent
// results.  Throws std::domain_error if the request violates its invariants.
double fourier_partial_sum(const PartialSumSpec& spec);

// max over N in {1..n_max} and x in an offset grid of |S_N(x)|.  The grid
// is x_j = (j + offset)/grid_points, j = 0..grid_points-1, with an
// irrational-like default offset so no sample lands on a discontinuity of
// rho(x) or rho(2x); the environment variable ZMV_SEED_OFFSET (a value in
// (0,1)) overrides the offset for sensitivity experiments.
//
// Requires n_max >= 1 and grid_points >= 256 (std::domain_error otherwise).
// Throws BoundExceeded if the sup exceeds `bound`: the underlying series
// is classically uniformly bounded, so that signals an implementation bug.
double partial_sum_sup(long n_max, int grid_points, double bound = 2.0);

}  // namespace zmv::fracfourier

#endif  // ZMV_FRACFOURIER_HPP
