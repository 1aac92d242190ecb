// vipar command line: forward/inverse effect-measure maps, feasibility
// checks, likelihood fitting, data simulation and grid sweeps.
//
// Exit codes: 0 success, 2 input or validation error, 3 numerical
// non-convergence (a report is still written where one exists).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vipar/io.hpp"
#include "vipar/measures.hpp"
#include "vipar/regression.hpp"
#include "vipar/simulate.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoConverge = 3;

bool verbose() {
    const char* v = std::getenv("VIPAR_LOG");
    return v != nullptr && v[0] != '\0' && std::string(v) != "0";
}

void log_note(const std::string& msg) {
    if (verbose()) std::cerr << "[vipar] " << msg << '\n';
}

class NonConvergence : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_coeffs(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(field, &pos));
            if (pos != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw std::domain_error(flag + ": '" + field + "' is not a number");
        }
    }
    if (out.empty()) throw std::domain_error(flag + ": empty coefficient list");
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::domain_error("cannot open output file '" + out_path + "'");
    f << text;
}

std::string csv_line(const std::vector<std::pair<std::string, double>>& fields) {
    std::string header, row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            header += ',';
            row += ',';
        }
        header += fields[i].first;
        row += vipar::format_csv_double(fields[i].second);
    }
    return header + '\n' + row + '\n';
}

// ---- forward ----------------------------------------------------------

struct ForwardArgs {
    std::vector<double> gop;
    std::vector<double> rr_op;
    std::string format = "json";
    std::string out;
};

int run_forward(const ForwardArgs& a) {
    std::string text;
    if (!a.gop.empty()) {
        const vipar::ProbTable p{a.gop[0], a.gop[1], a.gop[2], a.gop[3]};
        const vipar::EffectVector c = vipar::forward_gop(p);
        if (a.format == "json")
            text = json{{"rr0", c.rr0}, {"or10", c.or10}, {"rr11", c.rr11}, {"gop", c.gop}}
                       .dump()
                   + "\n";
        else
            text = csv_line({{"rr0", c.rr0}, {"or10", c.or10}, {"rr11", c.rr11}, {"gop", c.gop}});
    } else {
        const vipar::RiskPair p{a.rr_op[0], a.rr_op[1]};
        const vipar::TargetPair t = vipar::forward_rr_op(p);
        if (a.format == "json")
            text = json{{"rr", t.rr}, {"op", t.op}}.dump() + "\n";
        else
            text = csv_line({{"rr", t.rr}, {"op", t.op}});
    }
    emit(text, a.out);
    return kExitOk;
}

// ---- invert -----------------------------------------------------------

struct InvertArgs {
    std::vector<double> gop;
    std::vector<double> rr_op;
    std::string format = "json";
    std::string out;
    vipar::SolverConfig solver;
};

int run_invert(const InvertArgs& a) {
    std::string text;
    bool converged = true;
    if (!a.gop.empty()) {
        const vipar::EffectVector c{a.gop[0], a.gop[1], a.gop[2], a.gop[3]};
        const auto [p, root] = vipar::inverse_gop_traced(c, a.solver);
        converged = root.converged;
        log_note("invert: root=" + std::to_string(root.root) + " iterations="
                 + std::to_string(root.iterations) + " residual=" + std::to_string(root.residual));
        if (a.format == "json")
            text = json{{"p00", p.p00},
                        {"p01", p.p01},
                        {"p10", p.p10},
                        {"p11", p.p11},
                        {"iterations", root.iterations},
                        {"residual", root.residual},
                        {"converged", root.converged}}
                       .dump()
                   + "\n";
        else
            text = csv_line({{"p00", p.p00},
                             {"p01", p.p01},
                             {"p10", p.p10},
                             {"p11", p.p11},
                             {"iterations", root.iterations},
                             {"residual", root.residual}});
    } else {
        const vipar::TargetPair t{a.rr_op[0], a.rr_op[1]};
        const auto [p, root] = vipar::inverse_rr_op_traced(t, a.solver);
        converged = root.converged;
        if (a.format == "json")
            text = json{{"p1", p.p1},
                        {"p0", p.p0},
                        {"iterations", root.iterations},
                        {"residual", root.residual},
                        {"converged", root.converged}}
                       .dump()
                   + "\n";
        else
            text = csv_line({{"p1", p.p1},
                             {"p0", p.p0},
                             {"iterations", root.iterations},
                             {"residual", root.residual}});
    }
    emit(text, a.out);
    if (!converged) throw NonConvergence("inversion did not converge");
    return kExitOk;
}

// ---- feasible ---------------------------------------------------------

struct FeasibleArgs {
    std::vector<double> rr_sr;
    std::vector<double> rbc;
    int trt = -1;
    std::string format = "json";
    std::string out;
};

int run_feasible(const FeasibleArgs& a) {
    std::string text;
    if (!a.rr_sr.empty()) {
        const bool ok = vipar::check_rr_sr_feasible(a.rr_sr[0], a.rr_sr[1]);
        if (a.format == "json")
            text = json{{"r", a.rr_sr[0]}, {"s", a.rr_sr[1]}, {"feasible", ok}}.dump() + "\n";
        else
            text = "r,s,status\n" + vipar::format_csv_double(a.rr_sr[0]) + ','
                   + vipar::format_csv_double(a.rr_sr[1]) + ','
                   + (ok ? "feasible" : "infeasible") + '\n';
    } else {
        const double alpha = a.rbc[0];
        const double beta = a.rbc[1];
        json j{{"alpha", alpha}, {"beta", beta}};
        if (a.trt >= 0) {
            const auto risk = vipar::rbc_risk(alpha, beta, a.trt);
            j["trt"] = a.trt;
            j["valid"] = risk.has_value();
            j["risk"] = risk.has_value() ? json(*risk) : json(nullptr);
        } else {
            const auto r0 = vipar::rbc_risk(alpha, beta, 0);
            const auto r1 = vipar::rbc_risk(alpha, beta, 1);
            j["valid"] = r0.has_value() && r1.has_value();
            j["risk0"] = r0.has_value() ? json(*r0) : json(nullptr);
            j["risk1"] = r1.has_value() ? json(*r1) : json(nullptr);
        }
        if (a.format == "json") {
            text = j.dump() + "\n";
        } else {
            text = "alpha,beta,status\n" + vipar::format_csv_double(alpha) + ','
                   + vipar::format_csv_double(beta) + ','
                   + (j["valid"].get<bool>() ? "valid" : "invalid") + '\n';
        }
    }
    emit(text, a.out);
    return kExitOk;
}

// ---- fit --------------------------------------------------------------

struct FitArgs {
    std::string data_path;
    bool rr_op_mode = false;
    std::string out;
    double tol = 1e-6;
    int max_iter = 500;
};

json coefficients_json(const std::vector<std::pair<std::string, const std::vector<double>*>>& bs) {
    json j;
    for (const auto& [name, beta] : bs) j[name] = *beta;
    return j;
}

int run_fit(const FitArgs& a) {
    std::ifstream in(a.data_path);
    if (!in) throw std::domain_error("cannot open data file '" + a.data_path + "'");
    const vipar::LabeledTable table = vipar::read_csv(in);

    vipar::FitConfig cfg;
    cfg.grad_tol = a.tol;
    cfg.max_iter = a.max_iter;

    json report;
    bool converged = false;
    std::vector<std::string> names;
    if (a.rr_op_mode) {
        const vipar::ArmDataset data = vipar::table_to_arm(table, &names);
        const vipar::RrOpFitResult r = vipar::fit_rr_op(data, cfg);
        converged = r.converged;
        report = json{{"mode", "rr-op"},
                      {"covariates", names},
                      {"coefficients", coefficients_json({{"beta_rr", &r.model.beta_rr},
                                                          {"beta_op", &r.model.beta_op}})},
                      {"neg_log_lik", r.neg_log_lik},
                      {"iterations", r.iterations},
                      {"converged", r.converged},
                      {"grad_inf_norm", r.grad_inf_norm}};
    } else {
        const vipar::GopDataset data = vipar::table_to_gop(table, &names);
        const vipar::FitResult r = vipar::fit_gop(data, cfg);
        converged = r.converged;
        report = json{{"mode", "gop"},
                      {"covariates", names},
                      {"coefficients", coefficients_json({{"beta_rr0", &r.model.beta_rr0},
                                                          {"beta_or10", &r.model.beta_or10},
                                                          {"beta_rr11", &r.model.beta_rr11},
                                                          {"beta_gop", &r.model.beta_gop}})},
                      {"neg_log_lik", r.neg_log_lik},
                      {"iterations", r.iterations},
                      {"converged", r.converged},
                      {"grad_inf_norm", r.grad_inf_norm}};
    }
    log_note("fit: converged=" + std::to_string(converged));
    emit(report.dump(2) + "\n", a.out);
    if (!converged) throw NonConvergence("fit did not converge; report written");
    return kExitOk;
}

// ---- simulate ---------------------------------------------------------

struct SimulateArgs {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string l0 = "bernoulli:0.5";
    std::string a0_model = "0,0";
    std::string a1_model = "0,0,0";
    std::string beta_rr0 = "0,0";
    std::string beta_or10 = "0,0";
    std::string beta_rr11 = "0,0";
    std::string beta_gop = "0,0";
    std::string out;
};

vipar::L0Distribution parse_l0(const std::string& text) {
    vipar::L0Distribution d;
    if (text == "uniform") {
        d.kind = vipar::L0Distribution::Kind::uniform;
        return d;
    }
    const std::string prefix = "bernoulli";
    if (text.rfind(prefix, 0) == 0) {
        d.kind = vipar::L0Distribution::Kind::bernoulli;
        d.q = 0.5;
        if (text.size() > prefix.size()) {
            if (text[prefix.size()] != ':')
                throw std::domain_error("--l0: expected bernoulli:<q> or uniform");
            d.q = parse_coeffs(text.substr(prefix.size() + 1), "--l0").at(0);
        }
        return d;
    }
    throw std::domain_error("--l0: expected bernoulli:<q> or uniform, got '" + text + "'");
}

int run_simulate(const SimulateArgs& a) {
    vipar::DgpConfig cfg;
    cfg.n = a.n;
    cfg.seed = a.seed;
    cfg.l0 = parse_l0(a.l0);
    cfg.a0_model = parse_coeffs(a.a0_model, "--a0-model");
    cfg.a1_model = parse_coeffs(a.a1_model, "--a1-model");
    cfg.outcome_model.beta_rr0 = parse_coeffs(a.beta_rr0, "--beta-rr0");
    cfg.outcome_model.beta_or10 = parse_coeffs(a.beta_or10, "--beta-or10");
    cfg.outcome_model.beta_rr11 = parse_coeffs(a.beta_rr11, "--beta-rr11");
    cfg.outcome_model.beta_gop = parse_coeffs(a.beta_gop, "--beta-gop");

    const std::vector<vipar::SimRow> rows = vipar::simulate_dataset(cfg);
    std::ostringstream text;
    vipar::write_sim_csv(text, rows);
    emit(text.str(), a.out);
    return kExitOk;
}

// ---- sweep ------------------------------------------------------------

struct SweepArgs {
    std::string kind;
    std::vector<double> log_range{-2.0, 2.0};
    std::vector<double> range{-2.0, 2.0};
    double max = 4.0;
    int steps = 0;
    std::string out;
    std::string summary;
};

int run_sweep(const SweepArgs& a) {
    vipar::SweepReport rep;
    if (a.kind == "gop")
        rep = vipar::sweep_gop_independence(a.log_range[0], a.log_range[1], a.steps);
    else if (a.kind == "rr-sr")
        rep = vipar::sweep_rr_sr(a.max, a.max, a.steps);
    else if (a.kind == "rbc")
        rep = vipar::rbc_region(a.range[0], a.range[1], a.steps);
    else
        throw std::domain_error("--kind must be one of gop, rr-sr, rbc");

    if (!a.out.empty()) {
        std::ostringstream csv;
        vipar::write_sweep_csv(csv, rep);
        emit(csv.str(), a.out);
    }
    const json summary = vipar::sweep_summary_json(rep);
    if (!a.summary.empty()) emit(summary.dump(2) + "\n", a.summary);
    std::cout << summary.dump() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variation-independent parameterizations of binary-outcome effect measures"};
    app.require_subcommand(1);

    ForwardArgs fw;
    CLI::App* forward = app.add_subcommand(
        "forward", "map probabilities to effect measures (rr0, or10, rr11, gop) or (rr, op)");
    auto* fw_gop = forward->add_option("--gop", fw.gop, "four probabilities: p00 p01 p10 p11")
                       ->expected(4);
    auto* fw_rr = forward->add_option("--rr-op", fw.rr_op, "two probabilities: p1 p0")->expected(2);
    fw_gop->excludes(fw_rr);
    forward->add_option("--format", fw.format)->check(CLI::IsMember({"json", "csv"}));
    forward->add_option("--out", fw.out, "output path (default stdout)");

    InvertArgs iv;
    CLI::App* invert =
        app.add_subcommand("invert", "map effect measures back to the unique probabilities");
    auto* iv_gop = invert->add_option("--gop", iv.gop, "four measures: rr0 or10 rr11 gop")
                       ->expected(4);
    auto* iv_rr = invert->add_option("--rr-op", iv.rr_op, "two measures: rr op")->expected(2);
    iv_gop->excludes(iv_rr);
    invert->add_option("--format", iv.format)->check(CLI::IsMember({"json", "csv"}));
    invert->add_option("--out", iv.out);
    invert->add_option("--tol", iv.solver.abs_tol_x, "absolute root tolerance")
        ->check(CLI::PositiveNumber);
    invert->add_option("--max-iter", iv.solver.max_iter)->check(CLI::PositiveNumber);

    FeasibleArgs fe;
    CLI::App* feasible = app.add_subcommand(
        "feasible", "feasibility of (rr0, sr11) pairs and of the scaled-risk model");
    auto* fe_rr = feasible->add_option("--rr-sr", fe.rr_sr, "pair: r s")->expected(2);
    auto* fe_rbc = feasible->add_option("--rbc", fe.rbc, "pair: alpha beta")->expected(2);
    fe_rr->excludes(fe_rbc);
    feasible->add_option("--trt", fe.trt, "treatment arm for --rbc (default: both)")
        ->check(CLI::Range(0, 1));
    feasible->add_option("--format", fe.format)->check(CLI::IsMember({"json", "csv"}));
    feasible->add_option("--out", fe.out);

    FitArgs ft;
    CLI::App* fit = app.add_subcommand(
        "fit", "maximum-likelihood fit of log-linear effect-measure models from CSV");
    fit->add_option("data", ft.data_path, "CSV with header; y, a0, a1 reserved")->required();
    fit->add_flag("--rr-op", ft.rr_op_mode, "two-arm mode (y, a0 reserved; a1 absent)");
    fit->add_option("--out", ft.out, "report path (default stdout)");
    fit->add_option("--tol", ft.tol, "gradient sup-norm tolerance")->check(CLI::PositiveNumber);
    fit->add_option("--max-iter", ft.max_iter)->check(CLI::PositiveNumber);

    SimulateArgs sm;
    CLI::App* simulate =
        app.add_subcommand("simulate", "draw a synthetic dataset from the two-treatment design");
    simulate->add_option("--n", sm.n, "row count")->required();
    simulate->add_option("--seed", sm.seed);
    simulate->add_option("--l0", sm.l0, "bernoulli:<q> or uniform");
    simulate->add_option("--a0-model", sm.a0_model, "logit coefficients over 1,l0");
    simulate->add_option("--a1-model", sm.a1_model, "logit coefficients over 1,l0,a0");
    simulate->add_option("--beta-rr0", sm.beta_rr0, "outcome log-rr0 coefficients over 1,l0");
    simulate->add_option("--beta-or10", sm.beta_or10);
    simulate->add_option("--beta-rr11", sm.beta_rr11);
    simulate->add_option("--beta-gop", sm.beta_gop);
    simulate->add_option("--out", sm.out);

    SweepArgs sw;
    CLI::App* sweep = app.add_subcommand("sweep", "classify parameter grids");
    sweep->add_option("--kind", sw.kind, "gop | rr-sr | rbc")->required();
    sweep->add_option("--log-range", sw.log_range, "gop: log bounds lo hi")->expected(2);
    sweep->add_option("--range", sw.range, "rbc: bounds lo hi")->expected(2);
    sweep->add_option("--max", sw.max, "rr-sr: upper bound for both axes");
    sweep->add_option("--steps", sw.steps, "points per axis")->required();
    sweep->add_option("--out", sw.out, "cells CSV path");
    sweep->add_option("--summary", sw.summary, "summary JSON path");

    try {
        app.parse(argc, argv);
        if (forward->parsed()) {
            if (fw.gop.empty() == fw.rr_op.empty())
                throw std::domain_error("forward: exactly one of --gop / --rr-op is required");
            return run_forward(fw);
        }
        if (invert->parsed()) {
            if (iv.gop.empty() == iv.rr_op.empty())
                throw std::domain_error("invert: exactly one of --gop / --rr-op is required");
            iv.solver.abs_tol_f = iv.solver.abs_tol_x;
            return run_invert(iv);
        }
        if (feasible->parsed()) {
            if (fe.rr_sr.empty() == fe.rbc.empty())
                throw std::domain_error("feasible: exactly one of --rr-sr / --rbc is required");
            return run_feasible(fe);
        }
        if (fit->parsed()) return run_fit(ft);
        if (simulate->parsed()) return run_simulate(sm);
        if (sweep->parsed()) return run_sweep(sw);
        return kExitInput;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    } catch (const NonConvergence& e) {
        std::cerr << "vipar: " << e.what() << '\n';
        return kExitNoConverge;
    } catch (const vipar::SolverError& e) {
        std::cerr << "vipar: " << e.what() << '\n';
        return kExitNoConverge;
    } catch (const std::exception& e) {
        std::cerr << "vipar: " << e.what() << '\n';
        return kExitInput;
    }
}
