#pragma once

#include <functional>
#include <stdexcept>

namespace vipar {

/// Open interval (lo, hi) known to contain the root of a strictly
/// increasing function that diverges to -inf at lo and +inf at hi.
struct Bracket {
    double lo = 0.0;
    double hi = 1.0;
};

struct SolverConfig {
    double abs_tol_x = 1e-12;       // accept when bracket width falls below this
    double abs_tol_f = 1e-12;       // or when |f| falls below this
    int max_iter = 200;             // bisection cap
    double endpoint_shrink = 1e-12; // relative shrink applied to singular endpoints
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Thrown when the residual has the same sign at both shrunken endpoints,
/// i.e. the caller handed over a bracket that does not enclose a sign change.
class BracketSignError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

void validate(const SolverConfig& cfg);
void validate(const Bracket& bracket);

/// Bisection for a strictly increasing f with f(lo+) < 0 < f(hi-).
/// Evaluation stays inside [lo + s*w, hi - s*w] with s = endpoint_shrink and
/// w = hi - lo; the endpoints themselves are never touched. After the
/// tolerance is met, a few guarded Newton steps (numeric derivative) refine
/// the root inside the final bracket without altering the convergence
/// decision.
RootResult solve_monotone(const std::function<double(double)>& f, Bracket bracket,
                          const SolverConfig& cfg = {});

} // namespace vipar
