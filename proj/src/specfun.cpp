// zmv: complex special functions (implementation).
//
// Precision strategy: public interfaces are double; gamma and eta evaluate
// in long double (x87 80-bit); the Euler-Maclaurin zeta evaluates in
// __float128 because its pieces cancel ~11 decimal digits near Re s = -10,
// which long double cannot absorb at the accuracy the verifier needs.

#include "zmv/specfun.hpp"

#include <quadmath.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace zmv::specfun {

namespace {

using CL = std::complex<long double>;

constexpr long double kPiL = 3.14159265358979323846264338327950288L;
constexpr long double kLn2L = 0.693147180559945309417232121458176568L;
constexpr long double kSqrtTwoPiL = 2.50662827463100050241576528481104525L;

ComplexValue to_double(const CL& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// ---------------------------------------------------------------------------
// sin(pi x), cos(pi x) with exact range reduction
// ---------------------------------------------------------------------------

// remainder(x, 2) is exact, so integer and half-integer arguments produce
// exact zeros; without this, sin(pi*round_off) pollutes the reflection
// formula near the real axis.
long double sinpi_real(long double x) {
    long double r = std::remainder(x, 2.0L);   // r in [-1, 1]
    long double a = std::fabs(r);
    long double v = (a <= 0.5L) ? std::sin(kPiL * a) : std::sin(kPiL * (1.0L - a));
    return r < 0.0L ? -v : v;
}

long double cospi_real(long double x) {
    long double a = std::fabs(std::remainder(x, 2.0L));  // cos is even, period 2
    return -std::sin(kPiL * (a - 0.5L));
}

CL sin_pi_l(const CL& z) {
    long double x = z.real(), y = z.imag();
    return {sinpi_real(x) * std::cosh(kPiL * y),
            cospi_real(x) * std::sinh(kPiL * y)};
}

CL cos_pi_l(const CL& z) {
    long double x = z.real(), y = z.imag();
    return {cospi_real(x) * std::cosh(kPiL * y),
            -sinpi_real(x) * std::sinh(kPiL * y)};
}

// ---------------------------------------------------------------------------
// Lanczos gamma
// ---------------------------------------------------------------------------

// Godfrey's coefficients for g = 7, 9 terms (the set used across numerical
// libraries since Lanczos (1964) via Godfrey's least-squares refit).
// Probed against a 40-digit reference on |Re z|,|Im z| <= 55: max relative
// error 1.9e-13 in this evaluation order.
constexpr long double kLanczosG7[9] = {
    0.99999999999980993L,
    676.5203681218851L,
    -1259.1392167224028L,
    771.32342877765313L,
    -176.61502916214059L,
    12.507343278686905L,
    -0.13857109526572012L,
    9.9843695780195716e-6L,
    1.5056327351493116e-7L,
};

// Gamma(z) for Re z >= 0.5.
CL lanczos_positive(const CL& z) {
    CL zm1 = z - 1.0L;
    CL acc(kLanczosG7[0], 0.0L);
    for (int i = 1; i < 9; ++i) {
        acc += kLanczosG7[i] / (zm1 + static_cast<long double>(i));
    }
    CL t = zm1 + 7.5L;
    return kSqrtTwoPiL * std::exp((zm1 + 0.5L) * std::log(t) - t) * acc;
}

void check_gamma_pole(const ComplexValue& z) {
    double n = std::round(z.real());
    if (n <= 0.0 && std::abs(z - ComplexValue(n, 0.0)) < kGammaPoleGuard) {
        throw PoleError("gamma: argument within guard radius of pole at " +
                        std::to_string(static_cast<long>(n)));
    }
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin zeta, quad-precision internals
// ---------------------------------------------------------------------------

using qfloat = __float128;

struct QC {
    qfloat re, im;
};

QC operator+(QC a, QC b) { return {a.re + b.re, a.im + b.im}; }
QC operator-(QC a, QC b) { return {a.re - b.re, a.im - b.im}; }
QC operator*(QC a, QC b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
QC operator*(qfloat a, QC b) { return {a * b.re, a * b.im}; }
QC operator/(QC a, QC b) {
    qfloat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

double qc_abs(QC a) {
    return static_cast<double>(sqrtq(a.re * a.re + a.im * a.im));
}

// x^w = exp(w ln x) for real x > 0.
QC qc_pow_real(qfloat x, QC w) {
    qfloat L = logq(x);
    qfloat m = expq(w.re * L);
    qfloat si, co;
    sincosq(w.im * L, &si, &co);
    return {m * co, m * si};
}

// B_{2k}/(2k)! for k = 1..16 from the exact rationals
// B_2 = 1/6, B_4 = -1/30, B_6 = 1/42, B_8 = -1/30, B_10 = 5/66,
// B_12 = -691/2730, B_14 = 7/6, B_16 = -3617/510, B_18 = 43867/798,
// B_20 = -174611/330, B_22 = 854513/138, B_24 = -236364091/2730,
// B_26 = 8553103/6, B_28 = -23749461029/870, B_30 = 8615841276005/14322,
// B_32 = -7709321041217/510.
// k = 16 (B_32) exists only to price the first omitted correction term.
const std::array<qfloat, 17>& bernoulli_over_factorial() {
    static const std::array<qfloat, 17> table = [] {
        constexpr long long num[17] = {0,
                                       1, -1, 1, -1, 5, -691, 7, -3617,
                                       43867, -174611, 854513, -236364091,
                                       8553103, -23749461029LL, 8615841276005LL,
                                       -7709321041217LL};
        constexpr long long den[17] = {1,
                                       6, 30, 42, 30, 66, 2730, 6, 510,
                                       798, 330, 138, 2730, 6, 870, 14322, 510};
        std::array<qfloat, 17> a{};
        qfloat fact = 1.0Q;  // (2k)! built incrementally
        for (int k = 1; k <= 16; ++k) {
            fact *= static_cast<qfloat>(2 * k - 1) * static_cast<qfloat>(2 * k);
            a[k] = static_cast<qfloat>(num[k]) / static_cast<qfloat>(den[k]) / fact;
        }
        return a;
    }();
    return table;
}

int auto_pivot(const ComplexValue& s) {
    return std::max(24, static_cast<int>(std::ceil(0.6 * std::abs(s.imag()))) + 12);
}

}  // namespace

ComplexValue sin_pi(ComplexValue z) { return to_double(sin_pi_l(CL(z.real(), z.imag()))); }
ComplexValue cos_pi(ComplexValue z) { return to_double(cos_pi_l(CL(z.real(), z.imag()))); }

double sin_pi(double x) { return static_cast<double>(sinpi_real(x)); }
double cos_pi(double x) { return static_cast<double>(cospi_real(x)); }

ComplexValue gamma(ComplexValue z) {
    check_gamma_pole(z);
    CL zl(z.real(), z.imag());
    if (z.real() >= 0.5) {
        return to_double(lanczos_positive(zl));
    }
    // Reflection: Gamma(z) = pi / (sin(pi z) * Gamma(1 - z)).
    return to_double(kPiL / (sin_pi_l(zl) * lanczos_positive(1.0L - zl)));
}

ComplexValue recip_gamma(ComplexValue z) {
    CL zl(z.real(), z.imag());
    if (z.real() >= 0.5) {
        return to_double(1.0L / lanczos_positive(zl));
    }
    // 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi: entire, with clean zeros at
    // z = 0, -1, -2, ... because sinpi_real reduces exactly.
    return to_double(sin_pi_l(zl) * lanczos_positive(1.0L - zl) / kPiL);
}

ComplexValue zeta(ComplexValue s, const OracleConfig& cfg) {
    if (std::abs(s - ComplexValue(1.0, 0.0)) <= kZetaPoleGuard) {
        throw PoleError("zeta: argument within guard radius of the pole at s = 1");
    }
    if (cfg.pivot_terms < 0 || (cfg.pivot_terms > 0 && cfg.pivot_terms < 2)) {
        throw std::domain_error("zeta: pivot_terms must be >= 2 (or 0 for automatic)");
    }
    if (cfg.correction_terms < 0 || cfg.correction_terms > kMaxCorrectionTerms) {
        throw std::domain_error("zeta: correction_terms outside stored Bernoulli range");
    }
    const int N = cfg.pivot_terms > 0 ? cfg.pivot_terms : auto_pivot(s);
    const int M = cfg.correction_terms;
    const auto& bern = bernoulli_over_factorial();

    const QC sq{static_cast<qfloat>(s.real()), static_cast<qfloat>(s.imag())};
    const QC neg_s{-sq.re, -sq.im};

    // Direct sum over n < N.
    QC acc{0.0Q, 0.0Q};
    for (int n = 1; n < N; ++n) {
        acc = acc + qc_pow_real(static_cast<qfloat>(n), neg_s);
    }

    const qfloat Nq = static_cast<qfloat>(N);
    const QC n_pow = qc_pow_real(Nq, neg_s);  // N^{-s}
    const QC one{1.0Q, 0.0Q};
    QC total = acc + (Nq * n_pow) / (sq - one) + QC{0.5Q * n_pow.re, 0.5Q * n_pow.im};

    // Correction sum: B_{2k}/(2k)! * (s)_{2k-1} * N^{-s-2k+1}, k = 1..M.
    QC poch = sq;                                  // (s)_1
    QC npow = {n_pow.re / Nq, n_pow.im / Nq};      // N^{-s-1}
    const qfloat N2 = Nq * Nq;
    for (int k = 1; k <= M; ++k) {
        total = total + bern[k] * (poch * npow);
        // Advance to (s)_{2k+1} and N^{-s-2k-1} for the next term (or the
        // first omitted term, used as the error estimate).
        QC f1 = sq + QC{static_cast<qfloat>(2 * k - 1), 0.0Q};
        QC f2 = sq + QC{static_cast<qfloat>(2 * k), 0.0Q};
        poch = poch * f1 * f2;
        npow = {npow.re / N2, npow.im / N2};
    }
    const double first_omitted = std::fabs(static_cast<double>(bern[M + 1])) * qc_abs(poch * npow);

    const double magnitude = qc_abs(total);
    if (first_omitted > cfg.target_tol * std::max(1.0, magnitude)) {
        throw NonConvergence("zeta: correction tail exceeds target_tol; "
                             "increase pivot_terms or correction_terms");
    }
    return {static_cast<double>(total.re), static_cast<double>(total.im)};
}

ComplexValue zeta(ComplexValue s) { return zeta(s, OracleConfig{}); }

ComplexValue eta(ComplexValue s) {
    if (!(s.real() > -2.0)) {
        throw std::domain_error("eta: requires Re s > -2");
    }
    const long double sigma = s.real();
    const long double t = std::fabs(static_cast<long double>(s.imag()));

    // Weight count from the alternating-series acceleration error bound
    // ~ (3+sqrt 8)^{-n} (1+2|t|) e^{pi|t|/2} (Borwein 2000), padded, with a
    // growth allowance for Re s < 0 where the terms themselves grow.
    constexpr long double kLnAccel = 1.76274717403908605L;  // ln(3+sqrt(8))
    long double need = (34.5L + 0.5L * kPiL * t + std::log1p(2.0L * t) +
                        1.5L * std::max(0.0L, -sigma) + 6.0L) /
                       kLnAccel;
    const int n = std::max(16, static_cast<int>(std::ceil(static_cast<double>(need))));
    if (n > 300) {
        throw NonConvergence("eta: acceleration weight count exceeds work cap");
    }

    // d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), built by the term
    // ratio t_i/t_{i-1} = 4 (n+i-1)(n-i+1) / (2i (2i-1)).
    std::vector<long double> d(static_cast<size_t>(n) + 1);
    long double term = 1.0L;  // n * t_0
    d[0] = 1.0L;
    for (int i = 1; i <= n; ++i) {
        term *= 4.0L * static_cast<long double>(n + i - 1) * static_cast<long double>(n - i + 1) /
                (static_cast<long double>(2 * i) * static_cast<long double>(2 * i - 1));
        d[static_cast<size_t>(i)] = d[static_cast<size_t>(i) - 1] + term;
    }

    const CL w(-sigma, -static_cast<long double>(s.imag()));  // exponent of (k+1)^{-s}
    CL acc(0.0L, 0.0L);
    long double sign = 1.0L;
    for (int k = 0; k < n; ++k) {
        const long double coeff = sign * (d[static_cast<size_t>(n)] - d[static_cast<size_t>(k)]);
        acc += coeff * std::exp(w * std::log(static_cast<long double>(k + 1)));
        sign = -sign;
    }
    return to_double(acc / d[static_cast<size_t>(n)]);
}

ComplexValue zeta_via_eta(ComplexValue s) {
    if (!(s.real() > -2.0)) {
        throw std::domain_error("zeta_via_eta: requires Re s > -2");
    }
    // Guard the zeros of 1 - 2^{1-s} at s = 1 + 2 pi i k / ln 2.
    const double k_near = std::round(s.imag() * static_cast<double>(kLn2L) /
                                     (2.0 * static_cast<double>(kPiL)));
    const double center_im = 2.0 * static_cast<double>(kPiL) * k_near / static_cast<double>(kLn2L);
    if (std::hypot(s.real() - 1.0, s.imag() - center_im) < kEtaZeroGuard) {
        throw DivisionHazard("zeta_via_eta: prefactor 1 - 2^{1-s} vanishes nearby");
    }
    // 1 - 2^{1-s} = -expm1((1-s) ln 2), with the complex expm1 split so the
    // real part stays accurate when (1-s) ln 2 is small.
    const CL w = (CL(1.0L, 0.0L) - CL(s.real(), s.imag())) * kLn2L;
    const long double half_sin = std::sin(w.imag() / 2.0L);
    const CL em1(std::expm1(w.real()) * std::cos(w.imag()) - 2.0L * half_sin * half_sin,
                 std::exp(w.real()) * std::sin(w.imag()));
    const ComplexValue e = eta(s);
    const CL r = CL(e.real(), e.imag()) / (-em1);
    return to_double(r);
}

ComplexValue pow_real_complex(double x, ComplexValue w) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("pow_real_complex: base must be positive and finite");
    }
    if (w.imag() == 0.0) {
        return {std::pow(x, w.real()), 0.0};  // exact for representable integer cases
    }
    const double L = std::log(x);
    const double m = std::exp(w.real() * L);
    const double ph = w.imag() * L;
    return {m * std::cos(ph), m * std::sin(ph)};
}

}  // namespace zmv::specfun
