#include "vipar/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vipar {

namespace {

void check_prob(double v, const char* name) {
    if (!(v > 0.0) || !(v < 1.0))
        throw std::domain_error(std::string(name) + " must lie strictly inside (0, 1), got "
                                + std::to_string(v));
}

void check_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(name) + " must be strictly positive and finite, got "
                                + std::to_string(v));
}

double odds(double p) { return p / (1.0 - p); }

} // namespace

double ProbTable::at(int a1, int a0) const {
    if (a1 == 0) return a0 == 0 ? p00 : p01;
    return a0 == 0 ? p10 : p11;
}

void validate(const ProbTable& p) {
    check_prob(p.p00, "p00");
    check_prob(p.p01, "p01");
    check_prob(p.p10, "p10");
    check_prob(p.p11, "p11");
}

void validate(const EffectVector& c) {
    check_positive(c.rr0, "rr0");
    check_positive(c.or10, "or10");
    check_positive(c.rr11, "rr11");
    check_positive(c.gop, "gop");
}

void validate(const RiskPair& p) {
    check_prob(p.p1, "p1");
    check_prob(p.p0, "p0");
}

void validate(const TargetPair& t) {
    check_positive(t.rr, "rr");
    check_positive(t.op, "op");
}

EffectVector forward_gop(const ProbTable& p) {
    validate(p);
    EffectVector c;
    c.rr0 = p.p01 / p.p00;
    c.or10 = odds(p.p10) / odds(p.p00);
    c.rr11 = p.p11 / p.p01;
    c.gop = odds(p.p00) * odds(p.p01) * odds(p.p10) * odds(p.p11);
    return c;
}

Bracket gop_bracket(const EffectVector& c) {
    validate(c);
    const double hi = std::min({1.0, 1.0 / c.rr0, 1.0 / (c.rr0 * c.rr11)});
    return Bracket{0.0, hi};
}

// f(u) = 4 log u - 2 log(1-u) - log(1 - rr0*u) - log(1 - rr0*rr11*u)
//        + 2 log rr0 + log or10 + log rr11 - log gop.
// The (1-x) factors are evaluated with log1p so precision survives near the
// singular upper endpoint.
double gop_residual(double u, const EffectVector& c) {
    const Bracket br = gop_bracket(c);
    if (!(u > br.lo) || !(u < br.hi))
        throw std::domain_error("u = " + std::to_string(u)
                                + " is outside the open bracket (0, " + std::to_string(br.hi)
                                + ")");
    return 4.0 * std::log(u) - 2.0 * std::log1p(-u) - std::log1p(-c.rr0 * u)
           - std::log1p(-c.rr0 * c.rr11 * u) + 2.0 * std::log(c.rr0) + std::log(c.or10)
           + std::log(c.rr11) - std::log(c.gop);
}

namespace {

ProbTable table_from_root(double u, const EffectVector& c) {
    ProbTable p;
    p.p00 = u;
    p.p01 = c.rr0 * u;
    p.p10 = c.or10 * u / (1.0 - u + c.or10 * u);
    p.p11 = c.rr0 * c.rr11 * u;
    return p;
}

} // namespace

std::pair<ProbTable, RootResult> inverse_gop_traced(const EffectVector& c,
                                                    const SolverConfig& cfg) {
    const Bracket br = gop_bracket(c);
    const RootResult r =
        solve_monotone([&c](double u) { return gop_residual(u, c); }, br, cfg);
    return {table_from_root(r.root, c), r};
}

ProbTable inverse_gop(const EffectVector& c, const SolverConfig& cfg) {
    auto [table, r] = inverse_gop_traced(c, cfg);
    if (!r.converged)
        throw SolverError("inverse_gop: iteration budget exhausted after "
                          + std::to_string(r.iterations) + " bisections");
    return table;
}

TargetPair forward_rr_op(const RiskPair& p) {
    validate(p);
    TargetPair t;
    t.rr = p.p1 / p.p0;
    t.op = odds(p.p1) * odds(p.p0);
    return t;
}

Bracket rr_op_bracket(const TargetPair& t) {
    validate(t);
    return Bracket{0.0, std::min(1.0, 1.0 / t.rr)};
}

double rr_op_residual(double p0, const TargetPair& t) {
    const Bracket br = rr_op_bracket(t);
    if (!(p0 > br.lo) || !(p0 < br.hi))
        throw std::domain_error("p0 = " + std::to_string(p0)
                                + " is outside the open bracket (0, " + std::to_string(br.hi)
                                + ")");
    return 2.0 * std::log(p0) + std::log(t.rr) - std::log1p(-t.rr * p0) - std::log1p(-p0)
           - std::log(t.op);
}

std::pair<RiskPair, RootResult> inverse_rr_op_traced(const TargetPair& t,
                                                     const SolverConfig& cfg) {
    const Bracket br = rr_op_bracket(t);
    const RootResult r =
        solve_monotone([&t](double p0) { return rr_op_residual(p0, t); }, br, cfg);
    return {RiskPair{t.rr * r.root, r.root}, r};
}

RiskPair inverse_rr_op(const TargetPair& t, const SolverConfig& cfg) {
    auto [pair, r] = inverse_rr_op_traced(t, cfg);
    if (!r.converged)
        throw SolverError("inverse_rr_op: iteration budget exhausted after "
                          + std::to_string(r.iterations) + " bisections");
    return pair;
}

bool check_rr_sr_feasible(double r, double s) {
    check_positive(r, "r");
    check_positive(s, "s");
    return s * (1.0 - r) < 1.0;
}

std::optional<double> rbc_risk(double alpha, double beta, int trt) {
    if (trt != 0 && trt != 1) throw std::domain_error("trt must be 0 or 1");
    const double eta = std::exp(alpha + beta * static_cast<double>(trt));
    if (!(eta <= 2.0)) return std::nullopt;
    return 0.5 * eta;
}

} // namespace vipar
