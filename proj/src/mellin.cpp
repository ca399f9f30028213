#include "zmv/mellin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cfloat>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "zmv/specfun.hpp"

namespace zmv::mellin {

namespace {

using CL = std::complex<long double>;

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

ComplexValue to_double(const CL& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Kahan-compensated complex accumulator (component-wise compensation).
struct KahanSum {
    ComplexValue sum{0.0, 0.0};
    ComplexValue comp{0.0, 0.0};
    void add(ComplexValue v) {
        const ComplexValue y = v - comp;
        const ComplexValue t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void validate_config(const TruncationConfig& cfg, const char* who) {
    if (cfg.max_intervals < 10) {
        throw std::domain_error(std::string(who) + ": max_intervals must be >= 10");
    }
    if (!(cfg.target_tol > 0.0) || !std::isfinite(cfg.target_tol)) {
        throw std::domain_error(std::string(who) + ": target_tol must be positive");
    }
}

void require_strip(ComplexValue s, double lo, double hi, const char* who) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw std::domain_error(std::string(who) + ": s must be finite");
    }
    if (!(s.real() >= lo + kStripMargin && s.real() <= hi - kStripMargin)) {
        throw std::domain_error(std::string(who) + ": Re s must lie in [" +
                                std::to_string(lo + kStripMargin) + ", " +
                                std::to_string(hi - kStripMargin) + "]");
    }
}

// Smallest piece count N with bound*N^{-decay} <= tol, computed in log space
// so absurd requirements cannot overflow.  Throws NonConvergence when the
// count exceeds `cap`.
long pieces_for(double bound, double decay, double tol, long cap, const char* who) {
    const double ln_needed = std::log(bound / tol) / decay;
    if (ln_needed > std::log(static_cast<double>(cap))) {
        throw NonConvergence(std::string(who) + ": tail bound needs ~exp(" +
                             std::to_string(ln_needed) + ") pieces, cap is " +
                             std::to_string(cap));
    }
    const long n = ln_needed <= 0.0
                       ? 1
                       : static_cast<long>(std::ceil(std::exp(ln_needed))) + 1;
    const long clamped = std::max<long>(n, 10);
    if (clamped > cap) {
        throw NonConvergence(std::string(who) + ": tail bound needs " +
                             std::to_string(clamped) + " pieces, cap is " +
                             std::to_string(cap));
    }
    return clamped;
}

// ---------------------------------------------------------------------------
// Exact interval antiderivatives
// ---------------------------------------------------------------------------
//
// Every kept piece reduces to
//
//   G(h) = int_0^h u (1+u)^{-s-1} du
//        = [(1+h)^{1-s} - 1]/(1-s) + [(1+h)^{-s} - 1]/s            (exact)
//        = sum_{k>=0} binom(-s-1,k) h^{k+2}/(k+2)                  (|h| < 1)
//
//   H(h) = h [1 - (1+h)^{-s}]/s - G(h)
//        = sum_{k>=0} binom(-s-1,k) h^{k+2}/((k+1)(k+2))
//
// with h = 1/n.  The exact forms subtract nearly equal powers and lose
// ~log2(1/h) bits, so they are used only for h > 1/64 (in long double,
// which keeps >= 12 spare digits there); for h <= 1/64 the series needs at
// most ~16 terms in plain double.  This matters: at the default tolerance
// the cutoff reaches ~3e7 intervals near Re s = 0.05, where the naive
// antiderivative difference would lose ~25 bits and visibly corrupt the sum.

constexpr long kSeriesThreshold = 64;
constexpr int kSeriesMaxTerms = 48;

CL g_exact(long double h, CL sl) {
    const long double l1p = std::log1p(h);
    const CL one{1.0L, 0.0L};
    const CL a = (std::exp((one - sl) * l1p) - one) / (one - sl);
    const CL b = (std::exp(-sl * l1p) - one) / sl;
    return a + b;
}

// Cheap magnitude proxy for the convergence tests below: |re| + |im| is
// within sqrt(2) of the modulus, plenty for a 1e-18 relative cutoff, and
// avoids two hypots per term in the hottest loop of the library.
inline double mag1(ComplexValue z) {
    return std::fabs(z.real()) + std::fabs(z.imag());
}

ComplexValue g_series(double h, ComplexValue s) {
    ComplexValue term{h * h, 0.0};  // binom(-s-1,0) h^2
    ComplexValue acc = term * 0.5;  // /(k+2) at k = 0
    for (int k = 1; k <= kSeriesMaxTerms; ++k) {
        term *= (-(s + static_cast<double>(k))) * (h / k);
        const ComplexValue contrib = term / static_cast<double>(k + 2);
        acc += contrib;
        if (mag1(contrib) < 1e-18 * mag1(acc)) break;
    }
    return acc;
}

ComplexValue h_series(double h, ComplexValue s) {
    ComplexValue term{h * h, 0.0};
    ComplexValue acc = term * 0.5;  // /((k+1)(k+2)) at k = 0
    for (int k = 1; k <= kSeriesMaxTerms; ++k) {
        term *= (-(s + static_cast<double>(k))) * (h / k);
        const ComplexValue contrib =
            term / static_cast<double>((k + 1) * (k + 2));
        acc += contrib;
        if (mag1(contrib) < 1e-18 * mag1(acc)) break;
    }
    return acc;
}

// int_n^{n+1} x^{-s-1} frac(x) dx = n^{1-s} G(1/n), n >= 1.
ComplexValue rho_piece(long n, ComplexValue s) {
    if (n < kSeriesThreshold) {
        const CL sl(s.real(), s.imag());
        const long double nl = static_cast<long double>(n);
        return to_double(std::pow(nl, CL{1.0L, 0.0L} - sl) * g_exact(1.0L / nl, sl));
    }
    return specfun::pow_real_complex(static_cast<double>(n),
                                     ComplexValue{1.0, 0.0} - s) *
           g_series(1.0 / static_cast<double>(n), s);
}

// int over the half-integer piece [m/2, (m+1)/2) of x^{-s-1}(frac(x) -
// frac(2x)) dx.  Writing x = m/2 + v: the integrand's sawtooth part is -v
// for even m and 1/2 - v for odd m, giving -a^{1-s} G(1/m) resp.
// +a^{1-s} H(1/m) with a = m/2.  m = 0 is handled by the caller.
ComplexValue telescoped_piece(long m, ComplexValue s) {
    const bool odd = (m & 1) != 0;
    if (m < kSeriesThreshold) {
        const CL sl(s.real(), s.imag());
        const long double h = 1.0L / static_cast<long double>(m);
        const CL apow =
            std::pow(static_cast<long double>(m) / 2.0L, CL{1.0L, 0.0L} - sl);
        const CL g = g_exact(h, sl);
        if (!odd) return to_double(-apow * g);
        const CL hh =
            (CL{1.0L, 0.0L} - std::exp(-sl * std::log1p(h))) / sl * h - g;
        return to_double(apow * hh);
    }
    const double h = 1.0 / static_cast<double>(m);
    const ComplexValue apow = specfun::pow_real_complex(
        static_cast<double>(m) / 2.0, ComplexValue{1.0, 0.0} - s);
    return odd ? apow * h_series(h, s) : -apow * g_series(h, s);
}

// ---------------------------------------------------------------------------
// Gauss-Legendre 15 for the oscillatory kernel
// ---------------------------------------------------------------------------

struct GL15 {
    std::array<long double, 15> node{};
    std::array<long double, 15> weight{};
};

// Nodes via Newton on P_15 (standard recurrence); generated once at first
// use to avoid transcribing 20-digit tables.
const GL15& gl15() {
    static const GL15 table = [] {
        GL15 t{};
        constexpr int n = 15;
        for (int i = 0; i < n; ++i) {
            long double x = std::cos(kPiL * (i + 0.75L) / (n + 0.5L));
            long double p1 = 0.0L, dp = 0.0L;
            for (int iter = 0; iter < 64; ++iter) {
                long double p0 = 1.0L;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const long double p2 =
                        ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0L);
                const long double step = p1 / dp;
                x -= step;
                if (std::fabs(step) < 1e-19L) break;
            }
            t.node[i] = x;
            t.weight[i] = 2.0L / ((1.0L - x * x) * dp * dp);
        }
        return t;
    }();
    return table;
}

// One panel of int x^{-s-1} sin(ax) dx over [x0, x1].
ComplexValue gl_panel(double x0, double x1, ComplexValue s, double a) {
    const GL15& t = gl15();
    const double mid = 0.5 * (x0 + x1);
    const double half = 0.5 * (x1 - x0);
    const ComplexValue expo = -s - ComplexValue{1.0, 0.0};
    KahanSum acc;
    for (int i = 0; i < 15; ++i) {
        const double x = mid + half * static_cast<double>(t.node[i]);
        acc.add(static_cast<double>(t.weight[i]) *
                specfun::pow_real_complex(x, expo) * std::sin(a * x));
    }
    return half * acc.sum;
}

// Integrate over [x0, x1], subdividing geometrically so the phase of the
// x^{-it} factor advances at most ~1.2 rad per panel; the sine contributes
// at most half a period per lobe, well inside GL15's comfort zone.
ComplexValue integrate_segment(double x0, double x1, ComplexValue s, double a) {
    const double log_ratio = std::log(x1 / x0);
    const int nsub =
        1 + static_cast<int>(std::fabs(s.imag()) * log_ratio / 1.2);
    const double ratio = std::exp(log_ratio / nsub);
    ComplexValue total{0.0, 0.0};
    double lo = x0;
    for (int i = 0; i < nsub; ++i) {
        const double hi = (i + 1 == nsub) ? x1 : lo * ratio;
        total += gl_panel(lo, hi, s, a);
        lo = hi;
    }
    return total;
}

}  // namespace

QuadratureOutcome mellin_rho(ComplexValue s, const TruncationConfig& cfg) {
    validate_config(cfg, "mellin_rho");
    require_strip(s, 0.0, 1.0, "mellin_rho");
    const double sigma = s.real();
    const bool mean_sub = cfg.tail_strategy == TailStrategy::mean_subtraction;

    // Tail bound beyond the cutoff N: with the sawtooth mean removed the
    // remainder is the periodic-Bernoulli integral ~ -N^{-s-1}/12; we report
    // double that.  A raw cutoff omits the mean 1/2 itself and only decays
    // like N^{-sigma}/(2 sigma).
    const double bound = mean_sub ? 1.0 / 6.0 : 0.5 / sigma;
    const double decay = mean_sub ? sigma + 1.0 : sigma;
    const long n_cut =
        pieces_for(bound, decay, cfg.target_tol, cfg.max_intervals, "mellin_rho");

    KahanSum acc;
    acc.add(ComplexValue{1.0, 0.0} / (ComplexValue{1.0, 0.0} - s));  // [0,1]
    for (long n = 1; n < n_cut; ++n) acc.add(rho_piece(n, s));
    if (mean_sub) {
        // int_N^inf x^{-s-1}/2 dx
        acc.add(0.5 *
                specfun::pow_real_complex(static_cast<double>(n_cut), -s) / s);
    }
    const double est =
        bound * std::exp(-decay * std::log(static_cast<double>(n_cut)));
    return {acc.sum, est, n_cut, est <= cfg.target_tol};
}

QuadratureOutcome mellin_telescoped(ComplexValue s, const TruncationConfig& cfg) {
    validate_config(cfg, "mellin_telescoped");
    require_strip(s, 0.0, 1.0, "mellin_telescoped");
    const double sigma = s.real();
    const bool mean_sub = cfg.tail_strategy == TailStrategy::mean_subtraction;

    // frac(x) - frac(2x) already has zero mean, so both strategies sum the
    // same pieces; they differ in the certificate.  mean_subtraction uses
    // the periodic-Bernoulli bound X^{-sigma-1}/12 at the x-cutoff X; the
    // raw certificate is the crude |integrand| <= 1/2 bound.
    const double bound = mean_sub ? 1.0 / 12.0 : 0.5 / sigma;
    const double decay = mean_sub ? sigma + 1.0 : sigma;
    const long x_cut = pieces_for(bound, decay, cfg.target_tol,
                                  cfg.max_intervals / 2, "mellin_telescoped");
    const long m_cut = 2 * x_cut;  // half-integer pieces

    KahanSum acc;
    // m = 0: integrand is -x on [0, 1/2).
    acc.add(-specfun::pow_real_complex(0.5, ComplexValue{1.0, 0.0} - s) /
            (ComplexValue{1.0, 0.0} - s));
    for (long m = 1; m < m_cut; ++m) acc.add(telescoped_piece(m, s));
    const double est =
        bound * std::exp(-decay * std::log(static_cast<double>(x_cut)));
    return {acc.sum, est, m_cut, est <= cfg.target_tol};
}

QuadratureOutcome mellin_sin_numeric(ComplexValue s, double a,
                                     const TruncationConfig& cfg) {
    validate_config(cfg, "mellin_sin_numeric");
    require_strip(s, -1.0, 0.0, "mellin_sin_numeric");
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::domain_error("mellin_sin_numeric: a must be positive and finite");
    }

    // Head [0, 1/(2a)]: substitute the sine series term by term;
    // int_0^d x^{2j-s} dx converges since Re(2j - s) > -1 on the strip.
    // With a*d = 1/2 the j-th term carries 2^{-(2j+1)}/(2j+1)!: eight terms
    // reach ~1e-18 relative.
    const double delta = 0.5 / a;
    ComplexValue head{0.0, 0.0};
    double pow_half = 0.5, factorial = 1.0;
    for (int j = 0; j < 8; ++j) {
        const double k = 2.0 * j + 1.0;
        const ComplexValue term =
            (pow_half / factorial) / (ComplexValue{k, 0.0} - s);
        head += (j % 2 == 0) ? term : -term;
        pow_half *= 0.25;
        factorial *= (k + 1.0) * (k + 2.0);
    }
    head *= specfun::pow_real_complex(delta, -s);

    // Rest of the first arch, then alternating half-period lobes.
    const double lobe_width = kPiL / a;
    KahanSum partial;
    partial.add(head);
    partial.add(integrate_segment(delta, lobe_width, s, a));

    // When Im s is large the x^{-it} twist modulates the early lobes and
    // their magnitudes need not decay monotonically yet; sum those directly
    // before starting the averaging scheme.
    const double abs_t = std::fabs(s.imag());
    const long direct_lobes =
        std::max<long>(8, static_cast<long>(std::ceil(abs_t / 2.0)));
    long lobe = 1;
    for (; lobe <= direct_lobes; ++lobe) {
        partial.add(integrate_segment(lobe * lobe_width, (lobe + 1) * lobe_width, s, a));
    }

    // Iterated averaging (Euler-transformation family) on the partial sums:
    // each diagonal level halves the alternating oscillation.  Stop once the
    // apex moves by < tol/2 twice in a row.
    constexpr int kMaxDepth = 64;
    std::vector<ComplexValue> diag;
    diag.reserve(kMaxDepth);
    ComplexValue apex_prev{0.0, 0.0};
    bool have_prev = false;
    double step_last = 0.0, step_penult = 0.0;
    double peak = std::abs(partial.sum);  // roundoff scale of the sum
    int quiet = 0;
    for (;; ++lobe) {
        if (lobe > cfg.max_intervals) {
            throw NonConvergence(
                "mellin_sin_numeric: averaging residual still above target_tol after " +
                std::to_string(lobe - 1) + " lobes");
        }
        partial.add(integrate_segment(lobe * lobe_width, (lobe + 1) * lobe_width, s, a));
        peak = std::max(peak, std::abs(partial.sum));
        std::vector<ComplexValue> next(
            std::min<std::size_t>(diag.size() + 1, kMaxDepth));
        next[0] = partial.sum;
        for (std::size_t j = 1; j < next.size(); ++j) {
            next[j] = 0.5 * (next[j - 1] + diag[j - 1]);
        }
        const ComplexValue apex = next.back();
        diag = std::move(next);
        if (have_prev) {
            step_penult = step_last;
            step_last = std::abs(apex - apex_prev);
            if (step_last < 0.5 * cfg.target_tol) {
                if (++quiet >= 2) {
                    // Floor the certificate at the quadrature roundoff level:
                    // once the apex freezes, the raw deltas reach exactly 0,
                    // which would overstate the achievable double accuracy.
                    const double est = std::max(step_last + 0.5 * step_penult,
                                                8.0 * DBL_EPSILON * peak);
                    if (est <= cfg.target_tol) return {apex, est, lobe, true};
                    quiet = 0;  // unreachable target: run into the lobe cap
                }
            } else {
                quiet = 0;
            }
        }
        apex_prev = apex;
        have_prev = true;
    }
}

}  // namespace zmv::mellin
