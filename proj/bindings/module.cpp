#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vipar/measures.hpp"
#include "vipar/regression.hpp"
#include "vipar/simulate.hpp"

namespace py = pybind11;
using namespace vipar;

namespace {

GopDataset make_gop_dataset(const std::vector<DesignRow>& x, const std::vector<int>& a0,
                            const std::vector<int>& a1, const std::vector<int>& y) {
    if (x.size() != a0.size() || x.size() != a1.size() || x.size() != y.size())
        throw std::invalid_argument("x, a0, a1, y must have equal lengths");
    GopDataset data;
    data.rows.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        data.rows.push_back({x[i], a0[i], a1[i], y[i]});
    return data;
}

ArmDataset make_arm_dataset(const std::vector<DesignRow>& x, const std::vector<int>& trt,
                            const std::vector<int>& y) {
    if (x.size() != trt.size() || x.size() != y.size())
        throw std::invalid_argument("x, trt, y must have equal lengths");
    ArmDataset data;
    data.rows.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) data.rows.push_back({x[i], trt[i], y[i]});
    return data;
}

} // namespace

PYBIND11_MODULE(_vipar, m) {
    m.doc() = "Variation-independent parameterizations of binary-outcome effect measures";

    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<BracketSignError>(m, "BracketSignError", PyExc_ValueError);

    py::class_<ProbTable>(m, "ProbTable")
        .def(py::init<double, double, double, double>(), py::arg("p00"), py::arg("p01"),
             py::arg("p10"), py::arg("p11"))
        .def_readwrite("p00", &ProbTable::p00)
        .def_readwrite("p01", &ProbTable::p01)
        .def_readwrite("p10", &ProbTable::p10)
        .def_readwrite("p11", &ProbTable::p11)
        .def("at", &ProbTable::at, py::arg("a1"), py::arg("a0"))
        .def("__repr__", [](const ProbTable& p) {
            return "ProbTable(p00=" + std::to_string(p.p00) + ", p01=" + std::to_string(p.p01)
                   + ", p10=" + std::to_string(p.p10) + ", p11=" + std::to_string(p.p11) + ")";
        });

    py::class_<EffectVector>(m, "EffectVector")
        .def(py::init<double, double, double, double>(), py::arg("rr0"), py::arg("or10"),
             py::arg("rr11"), py::arg("gop"))
        .def_readwrite("rr0", &EffectVector::rr0)
        .def_readwrite("or10", &EffectVector::or10)
        .def_readwrite("rr11", &EffectVector::rr11)
        .def_readwrite("gop", &EffectVector::gop)
        .def("__repr__", [](const EffectVector& c) {
            return "EffectVector(rr0=" + std::to_string(c.rr0) + ", or10="
                   + std::to_string(c.or10) + ", rr11=" + std::to_string(c.rr11)
                   + ", gop=" + std::to_string(c.gop) + ")";
        });

    py::class_<RiskPair>(m, "RiskPair")
        .def(py::init<double, double>(), py::arg("p1"), py::arg("p0"))
        .def_readwrite("p1", &RiskPair::p1)
        .def_readwrite("p0", &RiskPair::p0);

    py::class_<TargetPair>(m, "TargetPair")
        .def(py::init<double, double>(), py::arg("rr"), py::arg("op"))
        .def_readwrite("rr", &TargetPair::rr)
        .def_readwrite("op", &TargetPair::op);

    py::class_<Bracket>(m, "Bracket")
        .def_readonly("lo", &Bracket::lo)
        .def_readonly("hi", &Bracket::hi);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("abs_tol_x", &SolverConfig::abs_tol_x)
        .def_readwrite("abs_tol_f", &SolverConfig::abs_tol_f)
        .def_readwrite("max_iter", &SolverConfig::max_iter)
        .def_readwrite("endpoint_shrink", &SolverConfig::endpoint_shrink);

    py::class_<RootResult>(m, "RootResult")
        .def_readonly("root", &RootResult::root)
        .def_readonly("residual", &RootResult::residual)
        .def_readonly("iterations", &RootResult::iterations)
        .def_readonly("converged", &RootResult::converged);

    m.def("forward_gop", &forward_gop, py::arg("p"));
    m.def("gop_bracket", &gop_bracket, py::arg("c"));
    m.def("gop_residual", &gop_residual, py::arg("u"), py::arg("c"));
    m.def("inverse_gop", &inverse_gop, py::arg("c"), py::arg("cfg") = SolverConfig{});
    m.def("inverse_gop_traced", &inverse_gop_traced, py::arg("c"),
          py::arg("cfg") = SolverConfig{});
    m.def("forward_rr_op", &forward_rr_op, py::arg("p"));
    m.def("inverse_rr_op", &inverse_rr_op, py::arg("t"), py::arg("cfg") = SolverConfig{});
    m.def("inverse_rr_op_traced", &inverse_rr_op_traced, py::arg("t"),
          py::arg("cfg") = SolverConfig{});
    m.def("check_rr_sr_feasible", &check_rr_sr_feasible, py::arg("r"), py::arg("s"));
    m.def("rbc_risk", &rbc_risk, py::arg("alpha"), py::arg("beta"), py::arg("trt"));

    py::class_<GopRegressionModel>(m, "GopRegressionModel")
        .def(py::init<>())
        .def(py::init([](std::vector<double> rr0, std::vector<double> or10,
                         std::vector<double> rr11, std::vector<double> gop) {
                 return GopRegressionModel{std::move(rr0), std::move(or10), std::move(rr11),
                                           std::move(gop)};
             }),
             py::arg("beta_rr0"), py::arg("beta_or10"), py::arg("beta_rr11"), py::arg("beta_gop"))
        .def_readwrite("beta_rr0", &GopRegressionModel::beta_rr0)
        .def_readwrite("beta_or10", &GopRegressionModel::beta_or10)
        .def_readwrite("beta_rr11", &GopRegressionModel::beta_rr11)
        .def_readwrite("beta_gop", &GopRegressionModel::beta_gop);

    py::class_<RrOpRegressionModel>(m, "RrOpRegressionModel")
        .def(py::init<>())
        .def(py::init([](std::vector<double> rr, std::vector<double> op) {
                 return RrOpRegressionModel{std::move(rr), std::move(op)};
             }),
             py::arg("beta_rr"), py::arg("beta_op"))
        .def_readwrite("beta_rr", &RrOpRegressionModel::beta_rr)
        .def_readwrite("beta_op", &RrOpRegressionModel::beta_op);

    py::class_<FitConfig>(m, "FitConfig")
        .def(py::init<>())
        .def_readwrite("solver", &FitConfig::solver)
        .def_readwrite("grad_tol", &FitConfig::grad_tol)
        .def_readwrite("max_iter", &FitConfig::max_iter)
        .def_readwrite("armijo_c", &FitConfig::armijo_c)
        .def_readwrite("fd_step_scale", &FitConfig::fd_step_scale)
        .def_readwrite("quasi_newton", &FitConfig::quasi_newton);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("model", &FitResult::model)
        .def_readonly("neg_log_lik", &FitResult::neg_log_lik)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("grad_inf_norm", &FitResult::grad_inf_norm)
        .def_readonly("nll_trace", &FitResult::nll_trace);

    py::class_<RrOpFitResult>(m, "RrOpFitResult")
        .def_readonly("model", &RrOpFitResult::model)
        .def_readonly("neg_log_lik", &RrOpFitResult::neg_log_lik)
        .def_readonly("iterations", &RrOpFitResult::iterations)
        .def_readonly("converged", &RrOpFitResult::converged)
        .def_readonly("grad_inf_norm", &RrOpFitResult::grad_inf_norm)
        .def_readonly("nll_trace", &RrOpFitResult::nll_trace);

    m.def("effects_at", &effects_at, py::arg("model"), py::arg("x"));
    m.def("targets_at", &targets_at, py::arg("model"), py::arg("x"));
    m.def(
        "predict",
        [](const GopRegressionModel& model, const DesignRow& x, int a1, int a0) {
            return predict(model, x, a1, a0);
        },
        py::arg("model"), py::arg("x"), py::arg("a1"), py::arg("a0"));
    m.def(
        "fit_gop",
        [](const std::vector<DesignRow>& x, const std::vector<int>& a0,
           const std::vector<int>& a1, const std::vector<int>& y, const FitConfig& cfg) {
            return fit_gop(make_gop_dataset(x, a0, a1, y), cfg);
        },
        py::arg("x"), py::arg("a0"), py::arg("a1"), py::arg("y"),
        py::arg("cfg") = FitConfig{});
    m.def(
        "fit_rr_op",
        [](const std::vector<DesignRow>& x, const std::vector<int>& trt,
           const std::vector<int>& y, const FitConfig& cfg) {
            return fit_rr_op(make_arm_dataset(x, trt, y), cfg);
        },
        py::arg("x"), py::arg("trt"), py::arg("y"), py::arg("cfg") = FitConfig{});
    m.def(
        "neg_log_lik",
        [](const GopRegressionModel& model, const std::vector<DesignRow>& x,
           const std::vector<int>& a0, const std::vector<int>& a1, const std::vector<int>& y) {
            return neg_log_lik(model, make_gop_dataset(x, a0, a1, y));
        },
        py::arg("model"), py::arg("x"), py::arg("a0"), py::arg("a1"), py::arg("y"));

    py::class_<L0Distribution>(m, "L0Distribution")
        .def_static("bernoulli",
                    [](double q) {
                        return L0Distribution{L0Distribution::Kind::bernoulli, q};
                    },
                    py::arg("q") = 0.5)
        .def_static("uniform", [] {
            return L0Distribution{L0Distribution::Kind::uniform, 0.5};
        });

    py::class_<SimRow>(m, "SimRow")
        .def_readonly("l0", &SimRow::l0)
        .def_readonly("a0", &SimRow::a0)
        .def_readonly("a1", &SimRow::a1)
        .def_readonly("y", &SimRow::y);

    py::class_<DgpConfig>(m, "DgpConfig")
        .def(py::init<>())
        .def_readwrite("n", &DgpConfig::n)
        .def_readwrite("seed", &DgpConfig::seed)
        .def_readwrite("l0", &DgpConfig::l0)
        .def_readwrite("a0_model", &DgpConfig::a0_model)
        .def_readwrite("a1_model", &DgpConfig::a1_model)
        .def_readwrite("outcome_model", &DgpConfig::outcome_model)
        .def_readwrite("solver", &DgpConfig::solver);

    m.def("simulate_dataset", &simulate_dataset, py::arg("cfg"));

    py::class_<SweepReport>(m, "SweepReport")
        .def_readonly("kind", &SweepReport::kind)
        .def_readonly("coord_names", &SweepReport::coord_names)
        .def_readonly("coords", &SweepReport::coords)
        .def_property_readonly("ok",
                               [](const SweepReport& r) {
                                   std::vector<bool> v(r.ok.begin(), r.ok.end());
                                   return v;
                               })
        .def("ok_count", &SweepReport::ok_count)
        .def("fail_count", &SweepReport::fail_count);

    m.def("sweep_gop_independence", &sweep_gop_independence, py::arg("log_lo"),
          py::arg("log_hi"), py::arg("steps"), py::arg("cfg") = SolverConfig{});
    m.def("sweep_rr_sr", &sweep_rr_sr, py::arg("r_max"), py::arg("s_max"), py::arg("steps"));
    m.def("rbc_region", &rbc_region, py::arg("lo"), py::arg("hi"), py::arg("steps"));
}
