#include "zmv/funceq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "zmv/specfun.hpp"

namespace zmv::funceq {

namespace sf = zmv::specfun;

namespace {

constexpr double kQNaN = std::numeric_limits<double>::quiet_NaN();

// Compensated complex accumulator (components carry separate residuals).
struct KahanSum {
    ComplexValue sum{0.0, 0.0};
    ComplexValue comp{0.0, 0.0};

    void add(ComplexValue term) {
        const ComplexValue y = term - comp;
        const ComplexValue t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void require_lower_strip(const char* who, ComplexValue s) {
    const double sigma = s.real();
    if (!std::isfinite(sigma) || !std::isfinite(s.imag()) ||
        sigma < -1.0 + mellin::kStripMargin || sigma > -mellin::kStripMargin) {
        throw std::domain_error(std::string(who) + ": Re s = " + std::to_string(sigma) +
                                " outside (" + std::to_string(-1.0 + mellin::kStripMargin) +
                                ", " + std::to_string(-mellin::kStripMargin) + ")");
    }
}

}  // namespace

VerificationRecord make_record(StepKind step, ComplexValue s, ComplexValue lhs,
                               ComplexValue rhs, long n_terms, bool converged,
                               const ToleranceProfile& tols) {
    VerificationRecord r;
    r.step = step;
    r.s = s;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    r.rel_err = r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1.0});
    r.n_terms = n_terms;
    r.converged = converged;
    // NaN errors compare false on both branches, so a failed evaluation can
    // never pass.
    r.pass = converged && (r.abs_err <= tols.abs_tol || r.rel_err <= tols.rel_tol);
    return r;
}

VerificationRecord failed_record(StepKind step, ComplexValue s,
                                 const ToleranceProfile& tols) {
    return make_record(step, s, {kQNaN, kQNaN}, {kQNaN, kQNaN}, 0, false, tols);
}

const char* step_name(StepKind step) {
    switch (step) {
        case StepKind::EQ1: return "EQ1";
        case StepKind::TELESCOPE: return "TELESCOPE";
        case StepKind::INTERCHANGE: return "INTERCHANGE";
        case StepKind::SERIES_SUM: return "SERIES_SUM";
        case StepKind::FUNC_EQ: return "FUNC_EQ";
    }
    return "UNKNOWN";
}

bool is_excluded(ComplexValue s, double radius) {
    if (!(radius > 0.0)) return false;
    const double re = s.real();
    const double im = s.imag();
    const auto near = [&](double cr, double ci) {
        return std::hypot(re - cr, im - ci) < radius;
    };
    if (near(0.0, 0.0) || near(1.0, 0.0)) return true;
    // chi poles on the real axis: odd integers >= 3.
    if (std::fabs(im) < radius && re > 3.0 - radius) {
        const double odd = 2.0 * std::round((re - 1.0) / 2.0) + 1.0;
        if (odd >= 3.0 && near(odd, 0.0)) return true;
    }
    // Zeros of 2^s - 1 (and of 2^{1-s} - 1, shifted to Re s = 1), where the
    // eta-based zeta oracle loses its denominator.
    const double rung = 2.0 * M_PI / std::log(2.0);
    for (int k = 1; k <= 5; ++k) {
        const double y = k * rung;
        if (near(0.0, y) || near(0.0, -y) || near(1.0, y) || near(1.0, -y)) return true;
    }
    return false;
}

ComplexValue mellin_sin_closed(ComplexValue s, double a) {
    require_lower_strip("mellin_sin_closed", s);
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::domain_error("mellin_sin_closed: frequency a = " + std::to_string(a) +
                                " must be positive and finite");
    }
    return -sf::gamma(-s) * sf::sin_pi(0.5 * s) * sf::pow_real_complex(a, s);
}

ComplexValue chi(ComplexValue s) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw std::domain_error("chi: s must be finite");
    }
    // pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2): equivalent to
    // 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) but with a single pole set (odd
    // s >= 1) and exact zeros at s = 0, -2, -4, ... through 1/Gamma.
    return sf::pow_real_complex(M_PI, s - 0.5) * sf::gamma(0.5 * (1.0 - s)) *
           sf::recip_gamma(0.5 * s);
}

VerificationRecord fe_residual(ComplexValue s, const ToleranceProfile& tols) {
    const ComplexValue lhs = sf::zeta(s);
    const ComplexValue rhs = chi(s) * sf::zeta(1.0 - s);
    return make_record(StepKind::FUNC_EQ, s, lhs, rhs, 0, true, tols);
}

ComplexValue series_rhs_partial(ComplexValue s, long n_terms) {
    require_lower_strip("series_rhs_partial", s);
    if (n_terms < 1) {
        throw std::domain_error("series_rhs_partial: n_terms = " + std::to_string(n_terms) +
                                " must be >= 1");
    }

    KahanSum acc;
    const long direct = std::min(n_terms, 64L);
    for (long n = 1; n <= direct; ++n) {
        const double dn = static_cast<double>(n);
        acc.add((mellin_sin_closed(s, 4.0 * M_PI * dn) - mellin_sin_closed(s, 2.0 * M_PI * dn)) /
                (dn * M_PI));
    }
    if (n_terms > 64) {
        // Factoring (4 pi n)^s - (2 pi n)^s = pi^s n^s (4^s - 2^s) turns the
        // tail into a single power per term.
        const ComplexValue two_s = sf::pow_real_complex(2.0, s);
        const ComplexValue prefactor = -sf::gamma(-s) * sf::sin_pi(0.5 * s) *
                                       sf::pow_real_complex(M_PI, s - 1.0) *
                                       (two_s * two_s - two_s);
        for (long n = 65; n <= n_terms; ++n) {
            acc.add(prefactor * sf::pow_real_complex(static_cast<double>(n), s - 1.0));
        }
    }
    return acc.sum;
}

std::vector<VerificationRecord> verify_chain(ComplexValue s,
                                             const mellin::TruncationConfig& cfg,
                                             const GridSpec& grid_policy,
                                             const ToleranceProfile& tols,
                                             long series_terms) {
    const double sigma = s.real();
    const double m = mellin::kStripMargin;
    const bool upper = std::isfinite(sigma) && sigma >= m && sigma <= 1.0 - m;
    const bool lower = std::isfinite(sigma) && sigma >= -1.0 + m && sigma <= -m;
    if ((!upper && !lower) || !std::isfinite(s.imag())) {
        throw std::domain_error("verify_chain: Re s = " + std::to_string(sigma) +
                                " lies in neither (0, 1) nor (-1, 0) with margin " +
                                std::to_string(m));
    }
    if (is_excluded(s, grid_policy.exclusion_radius)) return {};

    std::vector<VerificationRecord> records;
    const auto guarded = [&](StepKind step, auto&& eval) {
        try {
            records.push_back(eval());
        } catch (const std::exception&) {
            records.push_back(failed_record(step, s, tols));
        }
    };

    if (upper) {
        guarded(StepKind::EQ1, [&] {
            const auto q = mellin::mellin_rho(s, cfg);
            return make_record(StepKind::EQ1, s, q.value, sf::zeta(s) / (-s), q.work,
                               q.converged, tols);
        });
        guarded(StepKind::TELESCOPE, [&] {
            const auto q = mellin::mellin_telescoped(s, cfg);
            const ComplexValue rhs = (sf::pow_real_complex(2.0, s) - 1.0) * sf::zeta(s) / s;
            return make_record(StepKind::TELESCOPE, s, q.value, rhs, q.work, q.converged,
                               tols);
        });
    } else {
        for (const double a : {2.0 * M_PI, 4.0 * M_PI}) {
            guarded(StepKind::INTERCHANGE, [&] {
                const auto q = mellin::mellin_sin_numeric(s, a, cfg);
                return make_record(StepKind::INTERCHANGE, s, q.value,
                                   mellin_sin_closed(s, a), q.work, q.converged, tols);
            });
        }
        guarded(StepKind::SERIES_SUM, [&] {
            const long n = series_terms > 0
                               ? series_terms
                               : std::min(cfg.max_intervals, 100000L);
            const ComplexValue rhs = (sf::pow_real_complex(2.0, s) - 1.0) * sf::zeta(s) / s;
            return make_record(StepKind::SERIES_SUM, s, series_rhs_partial(s, n), rhs, n,
                               true, tols);
        });
    }
    guarded(StepKind::FUNC_EQ, [&] { return fe_residual(s, tols); });
    return records;
}

}  // namespace zmv::funceq
