#include "vipar/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "vipar/rng.hpp"

namespace vipar {

namespace {

double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void check_coeffs(const std::vector<double>& v, std::size_t len, const char* name) {
    if (v.size() != len)
        throw std::domain_error(std::string(name) + " must have " + std::to_string(len)
                                + " coefficients");
    for (double c : v)
        if (!std::isfinite(c)) throw std::domain_error(std::string(name) + " must be finite");
}

} // namespace

void validate(const DgpConfig& cfg) {
    if (cfg.n < 1) throw std::domain_error("n must be at least 1");
    if (cfg.l0.kind == L0Distribution::Kind::bernoulli
        && (!(cfg.l0.q > 0.0) || !(cfg.l0.q < 1.0)))
        throw std::domain_error("l0 bernoulli probability must lie in (0, 1)");
    check_coeffs(cfg.a0_model, 2, "a0_model");
    check_coeffs(cfg.a1_model, 3, "a1_model");
    const std::size_t dim = 2; // outcome design is (1, l0)
    check_coeffs(cfg.outcome_model.beta_rr0, dim, "outcome_model.beta_rr0");
    check_coeffs(cfg.outcome_model.beta_or10, dim, "outcome_model.beta_or10");
    check_coeffs(cfg.outcome_model.beta_rr11, dim, "outcome_model.beta_rr11");
    check_coeffs(cfg.outcome_model.beta_gop, dim, "outcome_model.beta_gop");
}

std::vector<SimRow> simulate_dataset(const DgpConfig& cfg) {
    validate(cfg);
    SplitMix64 s_l0 = substream(cfg.seed, 0);
    SplitMix64 s_a0 = substream(cfg.seed, 1);
    SplitMix64 s_a1 = substream(cfg.seed, 2);
    SplitMix64 s_y = substream(cfg.seed, 3);

    std::vector<SimRow> rows;
    rows.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        SimRow r;
        r.l0 = cfg.l0.kind == L0Distribution::Kind::uniform
                   ? s_l0.uniform01()
                   : (s_l0.uniform01() < cfg.l0.q ? 1.0 : 0.0);

        const double pa0 = logistic(cfg.a0_model[0] + cfg.a0_model[1] * r.l0);
        r.a0 = s_a0.uniform01() < pa0 ? 1 : 0;

        const double pa1 =
            logistic(cfg.a1_model[0] + cfg.a1_model[1] * r.l0 + cfg.a1_model[2] * r.a0);
        r.a1 = s_a1.uniform01() < pa1 ? 1 : 0;

        const double py =
            predict(cfg.outcome_model, DesignRow{1.0, r.l0}, r.a1, r.a0, cfg.solver);
        r.y = s_y.uniform01() < py ? 1 : 0;
        rows.push_back(r);
    }
    return rows;
}

GopDataset to_gop_dataset(const std::vector<SimRow>& rows) {
    GopDataset data;
    data.rows.reserve(rows.size());
    for (const SimRow& r : rows)
        data.rows.push_back(GopObservation{DesignRow{1.0, r.l0}, r.a0, r.a1, r.y});
    return data;
}

std::size_t SweepReport::ok_count() const {
    std::size_t n = 0;
    for (char c : ok) n += c != 0;
    return n;
}

std::size_t SweepReport::fail_count() const { return ok.size() - ok_count(); }

namespace {

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) throw std::domain_error("grid needs at least one step");
    std::vector<double> v(steps);
    if (steps == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < steps; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
    return v;
}

} // namespace

SweepReport sweep_gop_independence(double log_lo, double log_hi, int steps,
                                   const SolverConfig& cfg) {
    if (!(log_lo <= log_hi)) throw std::domain_error("log range must be ordered");
    std::vector<double> values;
    for (double t : linspace(log_lo, log_hi, steps)) values.push_back(std::exp(t));

    SweepReport rep;
    rep.kind = "gop";
    rep.coord_names = {"rr0", "or10", "rr11", "gop"};
    rep.ok_label = "success";
    rep.fail_label = "failure";
    for (double c1 : values)
        for (double c2 : values)
            for (double c3 : values)
                for (double c4 : values) {
                    bool ok = false;
                    try {
                        const auto [p, root] = inverse_gop_traced({c1, c2, c3, c4}, cfg);
                        ok = root.converged && p.p00 > 0.0 && p.p00 < 1.0 && p.p01 > 0.0
                             && p.p01 < 1.0 && p.p10 > 0.0 && p.p10 < 1.0 && p.p11 > 0.0
                             && p.p11 < 1.0;
                    } catch (const std::exception&) {
                        ok = false;
                    }
                    rep.coords.push_back({c1, c2, c3, c4});
                    rep.ok.push_back(ok ? 1 : 0);
                }
    return rep;
}

SweepReport sweep_rr_sr(double r_max, double s_max, int steps) {
    if (!(r_max > 0.0) || !(s_max > 0.0)) throw std::domain_error("grid bounds must be positive");
    if (steps < 1) throw std::domain_error("grid needs at least one step");

    SweepReport rep;
    rep.kind = "rr-sr";
    rep.coord_names = {"r", "s"};
    rep.ok_label = "feasible";
    rep.fail_label = "infeasible";
    for (int i = 1; i <= steps; ++i)
        for (int j = 1; j <= steps; ++j) {
            const double r = r_max * static_cast<double>(i) / steps;
            const double s = s_max * static_cast<double>(j) / steps;
            rep.coords.push_back({r, s});
            rep.ok.push_back(check_rr_sr_feasible(r, s) ? 1 : 0);
        }
    return rep;
}

SweepReport rbc_region(double lo, double hi, int steps) {
    if (!(lo <= hi)) throw std::domain_error("range must be ordered");
    const std::vector<double> values = linspace(lo, hi, steps);

    SweepReport rep;
    rep.kind = "rbc";
    rep.coord_names = {"alpha", "beta"};
    rep.ok_label = "valid";
    rep.fail_label = "invalid";
    for (double alpha : values)
        for (double beta : values) {
            const bool ok =
                rbc_risk(alpha, beta, 0).has_value() && rbc_risk(alpha, beta, 1).has_value();
            rep.coords.push_back({alpha, beta});
            rep.ok.push_back(ok ? 1 : 0);
        }
    return rep;
}

} // namespace vipar
