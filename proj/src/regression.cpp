#include "vipar/regression.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace vipar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_binary(int v, const char* name) {
    if (v != 0 && v != 1)
        throw std::domain_error(std::string(name) + " must be 0 or 1, got " + std::to_string(v));
}

void check_design(const DesignRow& x, std::size_t dim) {
    if (x.size() != dim) throw std::invalid_argument("design rows must share one length");
    for (double v : x)
        if (!std::isfinite(v)) throw std::domain_error("design entries must be finite");
}

double dot(const std::vector<double>& a, const DesignRow& x) {
    if (a.size() != x.size())
        throw std::invalid_argument("coefficient length " + std::to_string(a.size())
                                    + " does not match design length " + std::to_string(x.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

// y-count layout per design group: n[a1][a0][y] (gop) or n[trt][y] (two-arm).
template <typename Counts>
struct Grouped {
    std::vector<DesignRow> keys;
    std::vector<Counts> counts;
};

template <typename Counts, typename Row, typename Tally>
Grouped<Counts> group_rows(const std::vector<Row>& rows, Tally tally) {
    Grouped<Counts> g;
    std::map<DesignRow, std::size_t> index;
    for (const Row& r : rows) {
        auto [it, inserted] = index.try_emplace(r.x, g.keys.size());
        if (inserted) {
            g.keys.push_back(r.x);
            g.counts.emplace_back();
        }
        tally(g.counts[it->second], r);
    }
    return g;
}

// Bernoulli contribution of one cell; +inf when the probability has been
// rounded onto the boundary, which makes the enclosing line search back off.
double cell_nll(double p, long n1, long n0) {
    double s = 0.0;
    if (n1 > 0) {
        const double lp = std::log(p);
        if (!std::isfinite(lp)) return kInf;
        s -= static_cast<double>(n1) * lp;
    }
    if (n0 > 0) {
        const double lq = std::log1p(-p);
        if (!std::isfinite(lq)) return kInf;
        s -= static_cast<double>(n0) * lq;
    }
    return s;
}

struct KahanSum {
    double total = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = total + y;
        carry = (t - total) - y;
        total = t;
    }
};

struct GopCellCounts {
    long n[2][2][2] = {};
};

struct ArmCellCounts {
    long n[2][2] = {};
};

using GopGroups = Grouped<GopCellCounts>;
using ArmGroups = Grouped<ArmCellCounts>;

GopGroups group_gop(const GopDataset& data) {
    return group_rows<GopCellCounts>(data.rows, [](GopCellCounts& c, const GopObservation& r) {
        ++c.n[r.a1][r.a0][r.y];
    });
}

ArmGroups group_arm(const ArmDataset& data) {
    return group_rows<ArmCellCounts>(data.rows, [](ArmCellCounts& c, const ArmObservation& r) {
        ++c.n[r.trt][r.y];
    });
}

double grouped_nll(const GopRegressionModel& model, const GopGroups& groups,
                   const SolverConfig& cfg) {
    KahanSum sum;
    for (std::size_t g = 0; g < groups.keys.size(); ++g) {
        const EffectVector c = effects_at(model, groups.keys[g]);
        auto [p, root] = inverse_gop_traced(c, cfg);
        if (!root.converged)
            throw SolverError("neg_log_lik: inversion did not converge at a design row");
        for (int a1 = 0; a1 < 2; ++a1)
            for (int a0 = 0; a0 < 2; ++a0)
                sum.add(cell_nll(p.at(a1, a0), groups.counts[g].n[a1][a0][1],
                                 groups.counts[g].n[a1][a0][0]));
    }
    return sum.total;
}

double grouped_nll(const RrOpRegressionModel& model, const ArmGroups& groups,
                   const SolverConfig& cfg) {
    KahanSum sum;
    for (std::size_t g = 0; g < groups.keys.size(); ++g) {
        const TargetPair t = targets_at(model, groups.keys[g]);
        auto [p, root] = inverse_rr_op_traced(t, cfg);
        if (!root.converged)
            throw SolverError("neg_log_lik: inversion did not converge at a design row");
        sum.add(cell_nll(p.p0, groups.counts[g].n[0][1], groups.counts[g].n[0][0]));
        sum.add(cell_nll(p.p1, groups.counts[g].n[1][1], groups.counts[g].n[1][0]));
    }
    return sum.total;
}

std::vector<double> pack(const GopRegressionModel& m) {
    std::vector<double> theta;
    theta.reserve(4 * m.beta_rr0.size());
    for (const auto* b : {&m.beta_rr0, &m.beta_or10, &m.beta_rr11, &m.beta_gop})
        theta.insert(theta.end(), b->begin(), b->end());
    return theta;
}

GopRegressionModel unpack_gop(const std::vector<double>& theta, std::size_t dim) {
    GopRegressionModel m;
    m.beta_rr0.assign(theta.begin(), theta.begin() + dim);
    m.beta_or10.assign(theta.begin() + dim, theta.begin() + 2 * dim);
    m.beta_rr11.assign(theta.begin() + 2 * dim, theta.begin() + 3 * dim);
    m.beta_gop.assign(theta.begin() + 3 * dim, theta.end());
    return m;
}

RrOpRegressionModel unpack_arm(const std::vector<double>& theta, std::size_t dim) {
    RrOpRegressionModel m;
    m.beta_rr.assign(theta.begin(), theta.begin() + dim);
    m.beta_op.assign(theta.begin() + dim, theta.end());
    return m;
}

} // namespace

void validate(const GopDataset& data) {
    if (data.rows.empty()) throw std::domain_error("dataset must be nonempty");
    const std::size_t dim = data.rows.front().x.size();
    if (dim == 0) throw std::domain_error("design rows must be nonempty");
    for (const GopObservation& r : data.rows) {
        check_design(r.x, dim);
        check_binary(r.a0, "a0");
        check_binary(r.a1, "a1");
        check_binary(r.y, "y");
    }
}

void validate(const ArmDataset& data) {
    if (data.rows.empty()) throw std::domain_error("dataset must be nonempty");
    const std::size_t dim = data.rows.front().x.size();
    if (dim == 0) throw std::domain_error("design rows must be nonempty");
    for (const ArmObservation& r : data.rows) {
        check_design(r.x, dim);
        check_binary(r.trt, "trt");
        check_binary(r.y, "y");
    }
}

EffectVector effects_at(const GopRegressionModel& model, const DesignRow& x) {
    EffectVector c;
    c.rr0 = std::exp(dot(model.beta_rr0, x));
    c.or10 = std::exp(dot(model.beta_or10, x));
    c.rr11 = std::exp(dot(model.beta_rr11, x));
    c.gop = std::exp(dot(model.beta_gop, x));
    return c;
}

TargetPair targets_at(const RrOpRegressionModel& model, const DesignRow& x) {
    TargetPair t;
    t.rr = std::exp(dot(model.beta_rr, x));
    t.op = std::exp(dot(model.beta_op, x));
    return t;
}

double predict(const GopRegressionModel& model, const DesignRow& x, int a1, int a0,
               const SolverConfig& cfg) {
    check_binary(a0, "a0");
    check_binary(a1, "a1");
    return inverse_gop(effects_at(model, x), cfg).at(a1, a0);
}

double predict(const RrOpRegressionModel& model, const DesignRow& x, int trt,
               const SolverConfig& cfg) {
    check_binary(trt, "trt");
    const RiskPair p = inverse_rr_op(targets_at(model, x), cfg);
    return trt == 1 ? p.p1 : p.p0;
}

double neg_log_lik(const GopRegressionModel& model, const GopDataset& data,
                   const SolverConfig& cfg) {
    validate(data);
    return grouped_nll(model, group_gop(data), cfg);
}

double neg_log_lik(const RrOpRegressionModel& model, const ArmDataset& data,
                   const SolverConfig& cfg) {
    validate(data);
    return grouped_nll(model, group_arm(data), cfg);
}

std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& x, double scale) {
    std::vector<double> g(x.size());
    std::vector<double> probe = x;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double h = scale * std::max(1.0, std::abs(x[j]));
        probe[j] = x[j] + h;
        const double fp = f(probe);
        probe[j] = x[j] - h;
        const double fm = f(probe);
        probe[j] = x[j];
        g[j] = (fp - fm) / (2.0 * h);
    }
    return g;
}

MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& f,
                        std::vector<double> init, const FitConfig& cfg) {
    const std::size_t n = init.size();
    MinimizeResult out;
    out.x = std::move(init);
    out.value = f(out.x);
    out.trace.push_back(out.value);
    if (!std::isfinite(out.value)) return out;

    auto grad = [&](const std::vector<double>& x) { return fd_gradient(f, x, cfg.fd_step_scale); };
    auto inf_norm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double e : v) m = std::max(m, std::abs(e));
        return m;
    };

    std::vector<double> g = grad(out.x);
    // inverse-Hessian approximation, dense; identity means steepest descent
    std::vector<double> H(n * n, 0.0);
    auto reset_h = [&] {
        std::fill(H.begin(), H.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;
    };
    reset_h();

    std::vector<double> dir(n), xn(n), gn(n), s(n), yv(n);
    while (out.iterations < cfg.max_iter) {
        out.grad_inf_norm = inf_norm(g);
        if (out.grad_inf_norm < cfg.grad_tol) {
            out.converged = true;
            return out;
        }

        double gd = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double hi = 0.0;
            for (std::size_t j = 0; j < n; ++j) hi += H[i * n + j] * g[j];
            dir[i] = -hi;
            gd += dir[i] * g[i];
        }
        if (!cfg.quasi_newton || !(gd < 0.0)) {
            reset_h();
            for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
            gd = 0.0;
            for (std::size_t i = 0; i < n; ++i) gd += dir[i] * g[i];
            if (!(gd < 0.0)) return out; // gradient numerically zero
        }

        // backtracking with halving until sufficient decrease
        double step = 1.0;
        double fn = kInf;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) xn[i] = out.x[i] + step * dir[i];
            fn = f(xn);
            if (std::isfinite(fn) && fn <= out.value + cfg.armijo_c * step * gd) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return out; // no decrease representable along dir

        gn = grad(xn);
        if (cfg.quasi_newton) {
            double sy = 0.0, snorm = 0.0, ynorm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                s[i] = xn[i] - out.x[i];
                yv[i] = gn[i] - g[i];
                sy += s[i] * yv[i];
                snorm += s[i] * s[i];
                ynorm += yv[i] * yv[i];
            }
            if (sy > 1e-12 * std::sqrt(snorm) * std::sqrt(ynorm)) {
                // H <- (I - rho s y') H (I - rho y s') + rho s s'
                const double rho = 1.0 / sy;
                std::vector<double> hy(n, 0.0);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) hy[i] += H[i * n + j] * yv[j];
                double yhy = 0.0;
                for (std::size_t i = 0; i < n; ++i) yhy += yv[i] * hy[i];
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        H[i * n + j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j]
                                               - s[i] * hy[j]);
            }
        }

        out.x = xn;
        out.value = fn;
        g = gn;
        out.trace.push_back(fn);
        ++out.iterations;
    }
    out.grad_inf_norm = inf_norm(g);
    out.converged = out.grad_inf_norm < cfg.grad_tol;
    return out;
}

namespace {

template <typename Groups, typename Model>
double guarded_nll(const Model& model, const Groups& groups, const SolverConfig& cfg) {
    try {
        return grouped_nll(model, groups, cfg);
    } catch (const std::exception&) {
        return kInf; // off-scale iterate probed by the line search
    }
}

// With separated or degenerate data the likelihood flattens as coefficients
// run off to infinity, so the gradient test can pass at a boundary "optimum".
// A fitted cell probability this close to {0,1} marks the fit as boundary.
constexpr double kBoundaryTol = 1e-6;

bool on_boundary(const GopRegressionModel& model, const GopGroups& groups,
                 const SolverConfig& cfg) {
    for (const DesignRow& x : groups.keys) {
        const auto [p, root] = inverse_gop_traced(effects_at(model, x), cfg);
        if (!root.converged) return true;
        for (int a1 = 0; a1 < 2; ++a1)
            for (int a0 = 0; a0 < 2; ++a0) {
                const double pc = p.at(a1, a0);
                if (pc < kBoundaryTol || pc > 1.0 - kBoundaryTol) return true;
            }
    }
    return false;
}

bool on_boundary(const RrOpRegressionModel& model, const ArmGroups& groups,
                 const SolverConfig& cfg) {
    for (const DesignRow& x : groups.keys) {
        const auto [p, root] = inverse_rr_op_traced(targets_at(model, x), cfg);
        if (!root.converged) return true;
        for (double pc : {p.p0, p.p1})
            if (pc < kBoundaryTol || pc > 1.0 - kBoundaryTol) return true;
    }
    return false;
}

} // namespace

FitResult fit_gop(const GopDataset& data, const FitConfig& cfg) {
    validate(data);
    const std::size_t dim = data.rows.front().x.size();
    const GopGroups groups = group_gop(data);

    const auto objective = [&](const std::vector<double>& theta) {
        return guarded_nll(unpack_gop(theta, dim), groups, cfg.solver);
    };
    const MinimizeResult r = minimize(objective, std::vector<double>(4 * dim, 0.0), cfg);

    FitResult out;
    out.model = unpack_gop(r.x, dim);
    out.neg_log_lik = r.value;
    out.iterations = r.iterations;
    out.converged = r.converged && !on_boundary(out.model, groups, cfg.solver);
    out.grad_inf_norm = r.grad_inf_norm;
    out.nll_trace = r.trace;
    return out;
}

RrOpFitResult fit_rr_op(const ArmDataset& data, const FitConfig& cfg) {
    validate(data);
    const std::size_t dim = data.rows.front().x.size();
    const ArmGroups groups = group_arm(data);

    const auto objective = [&](const std::vector<double>& theta) {
        return guarded_nll(unpack_arm(theta, dim), groups, cfg.solver);
    };
    const MinimizeResult r = minimize(objective, std::vector<double>(2 * dim, 0.0), cfg);

    RrOpFitResult out;
    out.model = unpack_arm(r.x, dim);
    out.neg_log_lik = r.value;
    out.iterations = r.iterations;
    out.converged = r.converged && !on_boundary(out.model, groups, cfg.solver);
    out.grad_inf_norm = r.grad_inf_norm;
    out.nll_trace = r.trace;
    return out;
}

} // namespace vipar
