#include "vipar/rootfind.hpp"

#include <cmath>
#include <string>

namespace vipar {

void validate(const SolverConfig& cfg) {
    if (!(cfg.abs_tol_x > 0.0) || !std::isfinite(cfg.abs_tol_x))
        throw std::invalid_argument("SolverConfig.abs_tol_x must be strictly positive");
    if (!(cfg.abs_tol_f > 0.0) || !std::isfinite(cfg.abs_tol_f))
        throw std::invalid_argument("SolverConfig.abs_tol_f must be strictly positive");
    if (!(cfg.endpoint_shrink > 0.0) || !(cfg.endpoint_shrink < 0.5))
        throw std::invalid_argument("SolverConfig.endpoint_shrink must lie in (0, 0.5)");
    if (cfg.max_iter < 1)
        throw std::invalid_argument("SolverConfig.max_iter must be at least 1");
}

void validate(const Bracket& bracket) {
    if (!(bracket.lo >= 0.0) || !(bracket.lo < bracket.hi) || !std::isfinite(bracket.hi))
        throw std::invalid_argument("Bracket requires 0 <= lo < hi < inf");
}

namespace {

// Safeguarded secant refinement inside the terminal bracket [a, b] with
// f(a) < 0 < f(b). Improves the accepted root from tolerance level down to
// the last representable digit; never leaves the bracket, so the convergence
// decision made by bisection stands. Falls back to midpoint splitting when a
// secant step degenerates or lands outside.
double polish(const std::function<double(double)>& f, double a, double fa, double b,
              double fb, double best, double& fbest) {
    if (!(fa < 0.0) || !(fb > 0.0) || fbest == 0.0) return best;
    double x0 = best;
    double f0 = fbest;
    double x1 = f0 < 0.0 ? b : a;
    double f1 = f0 < 0.0 ? fb : fa;
    for (int k = 0; k < 60; ++k) {
        if (f0 < 0.0) {
            a = x0;
            fa = f0;
        } else {
            b = x0;
            fb = f0;
        }
        double t = 0.5 * (a + b);
        const double denom = f1 - f0;
        if (denom != 0.0 && std::isfinite(denom)) {
            const double s = x0 - f0 * (x1 - x0) / denom;
            if (s > a && s < b && s != x0) t = s;
        }
        if (!(t > a) || !(t < b)) break; // nothing representable strictly inside
        const double ft = f(t);
        if (!std::isfinite(ft)) break;
        x1 = x0;
        f1 = f0;
        x0 = t;
        f0 = ft;
        if (std::abs(f0) <= std::abs(fbest)) {
            best = x0;
            fbest = f0;
        }
        if (f0 == 0.0) break;
    }
    return best;
}

} // namespace

RootResult solve_monotone(const std::function<double(double)>& f, Bracket bracket,
                          const SolverConfig& cfg) {
    validate(cfg);
    validate(bracket);

    const double width0 = bracket.hi - bracket.lo;
    double a = bracket.lo + cfg.endpoint_shrink * width0;
    double b = bracket.hi - cfg.endpoint_shrink * width0;
    if (!(a < b)) throw std::invalid_argument("bracket collapses after endpoint shrink");

    double fa = f(a);
    double fb = f(b);
    if (std::isnan(fa) || std::isnan(fb))
        throw BracketSignError("residual is NaN at a shrunken endpoint");
    if (!(fa < 0.0 && fb > 0.0))
        throw BracketSignError("residual does not change sign over the shrunken bracket ("
                               + std::to_string(fa) + " at lo, " + std::to_string(fb)
                               + " at hi)");

    RootResult out;
    double mid = a;
    double fmid = fa;
    while (out.iterations < cfg.max_iter) {
        mid = 0.5 * (a + b);
        if (!(mid > a) || !(mid < b)) { // no representable midpoint left
            out.converged = true;
            break;
        }
        fmid = f(mid);
        ++out.iterations;
        if (std::abs(fmid) <= cfg.abs_tol_f) {
            out.converged = true;
            break;
        }
        if (fmid < 0.0) {
            a = mid;
            fa = fmid;
        } else {
            b = mid;
            fb = fmid;
        }
        if (b - a <= cfg.abs_tol_x) {
            out.converged = true;
            break;
        }
    }

    if (out.converged) mid = polish(f, a, fa, b, fb, mid, fmid);
    out.root = mid;
    out.residual = fmid;
    return out;
}

} // namespace vipar
