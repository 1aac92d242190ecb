#pragma once

#include <functional>
#include <vector>

#include "vipar/measures.hpp"

namespace vipar {

/// Covariate vector including the leading intercept term.
using DesignRow = std::vector<double>;

struct GopObservation {
    DesignRow x;
    int a0 = 0;
    int a1 = 0;
    int y = 0;
};

struct GopDataset {
    std::vector<GopObservation> rows;
};

/// Log-linear models for the four effect measures over a shared design row:
/// log rr0 = x.beta_rr0, log or10 = x.beta_or10, log rr11 = x.beta_rr11,
/// log gop = x.beta_gop. All four coefficient vectors have the design length.
struct GopRegressionModel {
    std::vector<double> beta_rr0;
    std::vector<double> beta_or10;
    std::vector<double> beta_rr11;
    std::vector<double> beta_gop;
};

struct ArmObservation {
    DesignRow x;
    int trt = 0;
    int y = 0;
};

struct ArmDataset {
    std::vector<ArmObservation> rows;
};

/// Two-arm analog: log rr = x.beta_rr, log op = x.beta_op.
struct RrOpRegressionModel {
    std::vector<double> beta_rr;
    std::vector<double> beta_op;
};

struct FitConfig {
    SolverConfig solver;
    double grad_tol = 1e-6;     // converged when the gradient sup norm drops below
    int max_iter = 500;
    double armijo_c = 1e-4;     // sufficient-decrease constant for backtracking
    double fd_step_scale = 1e-6; // central-difference step h = scale * max(1, |theta_j|)
    bool quasi_newton = true;   // BFGS direction; plain gradient descent when false
};

struct FitResult {
    GopRegressionModel model;
    double neg_log_lik = 0.0;
    int iterations = 0;
    bool converged = false;
    double grad_inf_norm = 0.0;
    std::vector<double> nll_trace; // objective at the start plus each accepted iterate
};

struct RrOpFitResult {
    RrOpRegressionModel model;
    double neg_log_lik = 0.0;
    int iterations = 0;
    bool converged = false;
    double grad_inf_norm = 0.0;
    std::vector<double> nll_trace;
};

void validate(const GopDataset& data);
void validate(const ArmDataset& data);

EffectVector effects_at(const GopRegressionModel& model, const DesignRow& x);
TargetPair targets_at(const RrOpRegressionModel& model, const DesignRow& x);

/// Cell probability p_{a1,a0} implied by the model at design row x; always a
/// valid probability, for any coefficient values.
double predict(const GopRegressionModel& model, const DesignRow& x, int a1, int a0,
               const SolverConfig& cfg = {});
double predict(const RrOpRegressionModel& model, const DesignRow& x, int trt,
               const SolverConfig& cfg = {});

/// Total Bernoulli negative log likelihood. Rows sharing a design vector are
/// grouped so each distinct row costs one inversion; the reduction order is
/// fixed (first-appearance order) so repeated calls are bit-identical.
double neg_log_lik(const GopRegressionModel& model, const GopDataset& data,
                   const SolverConfig& cfg = {});
double neg_log_lik(const RrOpRegressionModel& model, const ArmDataset& data,
                   const SolverConfig& cfg = {});

FitResult fit_gop(const GopDataset& data, const FitConfig& cfg = {});
RrOpFitResult fit_rr_op(const ArmDataset& data, const FitConfig& cfg = {});

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double grad_inf_norm = 0.0;
    std::vector<double> trace;
};

/// Line-searched minimizer behind both fit entry points. Objective values
/// are allowed to be +inf or NaN away from the current iterate; such steps
/// are rejected by the backtracking loop, so accepted objective values are
/// strictly non-increasing.
MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& f,
                        std::vector<double> init, const FitConfig& cfg = {});

/// Central-difference gradient with h = scale * max(1, |x_j|); the same rule
/// the minimizer uses, exposed so tests can cross-check with a different step.
std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& x, double scale);

} // namespace vipar
