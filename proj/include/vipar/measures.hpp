#pragma once

#include <optional>
#include <utility>

#include "vipar/rootfind.hpp"

namespace vipar {

/// Outcome probabilities for one covariate stratum of the two-treatment
/// design. Indexing convention is p_{a1,a0}: p01 is the cell with a1 = 0,
/// a0 = 1. All entries must lie strictly inside (0, 1).
struct ProbTable {
    double p00 = 0.5;
    double p01 = 0.5;
    double p10 = 0.5;
    double p11 = 0.5;

    double at(int a1, int a0) const;
};

/// The variation-independent quadruple: baseline risk ratio RR0 = p01/p00,
/// odds ratio OR10 = odds(p10)/odds(p00), risk ratio RR11 = p11/p01, and the
/// generalized odds product GOP = prod odds(p) over the four cells. Every
/// point of (0, inf)^4 corresponds to exactly one ProbTable.
struct EffectVector {
    double rr0 = 1.0;
    double or10 = 1.0;
    double rr11 = 1.0;
    double gop = 1.0;
};

/// Two-arm outcome probabilities, p1 = P(Y=1 | trt=1), p0 = P(Y=1 | trt=0).
struct RiskPair {
    double p1 = 0.5;
    double p0 = 0.5;
};

/// Two-arm target pair: risk ratio rr = p1/p0 and odds product
/// op = odds(p1) * odds(p0).
struct TargetPair {
    double rr = 1.0;
    double op = 1.0;
};

void validate(const ProbTable& p);
void validate(const EffectVector& c);
void validate(const RiskPair& p);
void validate(const TargetPair& t);

/// Thrown when a bracketed solve runs out of iterations. Does not indicate an
/// infeasible input; every valid EffectVector has a unique preimage.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

EffectVector forward_gop(const ProbTable& p);

/// Feasible interval (0, min{1, 1/rr0, 1/(rr0*rr11)}) for u = p00 given the
/// effect quadruple.
Bracket gop_bracket(const EffectVector& c);

/// Log-scale defining residual for u = p00:
///   log odds(u) + log odds(rr0*u) + log[c2*u/(1-u)] + log odds(rr0*rr11*u) - log gop
/// Strictly increasing on the bracket, -inf at the lower end, +inf at the
/// upper end. Throws std::domain_error if u is outside the open bracket.
double gop_residual(double u, const EffectVector& c);

/// Unique probability table mapping back to c under forward_gop. Throws
/// SolverError if the iteration budget is exhausted.
ProbTable inverse_gop(const EffectVector& c, const SolverConfig& cfg = {});

/// Same as inverse_gop but also returns the root-finder diagnostics and does
/// not throw on non-convergence (check .second.converged).
std::pair<ProbTable, RootResult> inverse_gop_traced(const EffectVector& c,
                                                    const SolverConfig& cfg = {});

TargetPair forward_rr_op(const RiskPair& p);

/// Feasible interval (0, min{1, 1/rr}) for p0 given the target pair.
Bracket rr_op_bracket(const TargetPair& t);

/// Log-scale residual for p0: log[rr*p0^2 / ((1-rr*p0)(1-p0))] - log op.
double rr_op_residual(double p0, const TargetPair& t);

RiskPair inverse_rr_op(const TargetPair& t, const SolverConfig& cfg = {});
std::pair<RiskPair, RootResult> inverse_rr_op_traced(const TargetPair& t,
                                                     const SolverConfig& cfg = {});

/// Whether some probability table realizes baseline risk ratio r together
/// with survival ratio s = (1-p11)/(1-p01). The feasible region is
/// {(r, s) : s*(1-r) < 1}, strict at the boundary; the pair is not variation
/// independent. Throws std::domain_error on non-positive input.
bool check_rr_sr_feasible(double r, double s);

/// Scaled-risk model P(Y=1 | trt) = exp(alpha + beta*trt) / 2. Returns the
/// probability when exp(alpha + beta*trt) <= 2 (boundary included, so 1.0 is
/// representable), std::nullopt when the linear predictor leaves the valid
/// region.
std::optional<double> rbc_risk(double alpha, double beta, int trt);

} // namespace vipar
