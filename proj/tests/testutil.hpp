#pragma once

// Independent oracles and sampling helpers shared by the test suites. The
// oracles deliberately avoid the code paths they check: grid scans use the
// polynomial (log-free) form of the defining equation, and the two-arm
// inverse is cross-checked against the closed-form quadratic.

#include <cmath>
#include <vector>

#include "vipar/measures.hpp"
#include "vipar/rng.hpp"

namespace testutil {

// Same sign as gop_residual(u, c) but computed multiplicatively:
//   rr0^2 * or10 * rr11 * u^4 - gop * (1-u)^2 (1 - rr0 u)(1 - rr0 rr11 u)
inline double product_residual(double u, const vipar::EffectVector& c) {
    const double lhs = c.rr0 * c.rr0 * c.or10 * c.rr11 * u * u * u * u;
    const double rhs =
        c.gop * (1.0 - u) * (1.0 - u) * (1.0 - c.rr0 * u) * (1.0 - c.rr0 * c.rr11 * u);
    return lhs - rhs;
}

// Location of the sign change of the defining residual on a uniform grid of
// m intervals over the bracket: the first grid point with residual >= 0.
inline double grid_scan_root(const vipar::EffectVector& c, long m) {
    const double hi = vipar::gop_bracket(c).hi;
    for (long k = 1; k < m; ++k) {
        const double u = hi * static_cast<double>(k) / static_cast<double>(m);
        if (product_residual(u, c) >= 0.0) return u;
    }
    return hi;
}

// Positive in-range root of rr(1-op) p0^2 + op(1+rr) p0 - op = 0, the
// closed-form counterpart of the two-arm inversion.
inline double rr_op_quadratic_root(double rr, double op) {
    const long double a = static_cast<long double>(rr) * (1.0L - static_cast<long double>(op));
    const long double b = static_cast<long double>(op) * (1.0L + static_cast<long double>(rr));
    const long double c = -static_cast<long double>(op);
    const double hi = std::min(1.0, 1.0 / rr);
    if (std::abs(static_cast<double>(a)) < 1e-300) return static_cast<double>(-c / b);
    const long double disc = b * b - 4.0L * a * c;
    const long double sq = std::sqrt(disc);
    const long double r1 = (-b + sq) / (2.0L * a);
    const long double r2 = (-b - sq) / (2.0L * a);
    const double cand1 = static_cast<double>(r1);
    const double cand2 = static_cast<double>(r2);
    if (cand1 > 0.0 && cand1 < hi) return cand1;
    return cand2;
}

// Witness search for the (rr0, sr11) region: try p01 on a uniform grid, fill
// in p00 = p01/r and p11 = 1 - s(1-p01), succeed if all land in (0,1).
inline bool rr_sr_feasible_by_scan(double r, double s, int points = 10000) {
    for (int k = 1; k < points; ++k) {
        const double p01 = static_cast<double>(k) / points;
        const double p00 = p01 / r;
        const double p11 = 1.0 - s * (1.0 - p01);
        if (p00 > 0.0 && p00 < 1.0 && p11 > 0.0 && p11 < 1.0) return true;
    }
    return false;
}

// Interval form of the same search: (max(0, 1-1/s), min(1, r)) nonempty.
inline bool rr_sr_feasible_by_interval(double r, double s) {
    return std::max(0.0, 1.0 - 1.0 / s) < std::min(1.0, r);
}

inline double uniform_in(vipar::SplitMix64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.uniform01();
}

inline double log_uniform(vipar::SplitMix64& rng, double log_lo, double log_hi) {
    return std::exp(uniform_in(rng, log_lo, log_hi));
}

inline vipar::EffectVector random_effects(vipar::SplitMix64& rng, double log_lo,
                                          double log_hi) {
    return {log_uniform(rng, log_lo, log_hi), log_uniform(rng, log_lo, log_hi),
            log_uniform(rng, log_lo, log_hi), log_uniform(rng, log_lo, log_hi)};
}

inline vipar::ProbTable random_table(vipar::SplitMix64& rng, double lo, double hi) {
    return {uniform_in(rng, lo, hi), uniform_in(rng, lo, hi), uniform_in(rng, lo, hi),
            uniform_in(rng, lo, hi)};
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

} // namespace testutil
