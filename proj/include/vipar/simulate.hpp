#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vipar/regression.hpp"

namespace vipar {

struct L0Distribution {
    enum class Kind { bernoulli, uniform };
    Kind kind = Kind::bernoulli;
    double q = 0.5; // success probability for the bernoulli case
};

/// Data-generating process on the DAG L0 -> {A0, A1, Y}, A0 -> {A1, Y},
/// A1 -> Y. Treatments follow logistic models, the outcome follows the
/// effect-measure parameterization: Y | A1, A0, L0 ~ Bernoulli(p_{a1,a0}(l0)).
struct DgpConfig {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    L0Distribution l0;
    std::vector<double> a0_model{0.0, 0.0};      // logit P(A0=1|L0) over (1, l0)
    std::vector<double> a1_model{0.0, 0.0, 0.0}; // logit P(A1=1|L0,A0) over (1, l0, a0)
    GopRegressionModel outcome_model;            // effect models over (1, l0)
    SolverConfig solver;
};

struct SimRow {
    double l0 = 0.0;
    int a0 = 0;
    int a1 = 0;
    int y = 0;
};

void validate(const DgpConfig& cfg);

/// Deterministic for a fixed config: one SplitMix64 substream per variable
/// (L0, A0, A1, Y), one draw per row per substream, rows generated in order.
std::vector<SimRow> simulate_dataset(const DgpConfig& cfg);

/// View the simulated rows as a regression dataset with design (1, l0).
GopDataset to_gop_dataset(const std::vector<SimRow>& rows);

/// Grid classification result; cells are stored in row-major grid order.
struct SweepReport {
    std::string kind;
    std::vector<std::string> coord_names;
    std::string ok_label;
    std::string fail_label;
    std::vector<std::vector<double>> coords;
    std::vector<char> ok; // 1 = ok_label, 0 = fail_label
    std::size_t ok_count() const;
    std::size_t fail_count() const;
};

/// Inverts every cell of the log-spaced grid exp(linspace(log_lo, log_hi,
/// steps))^4 and records success/failure; success everywhere is the expected
/// outcome, any failure indicates a solver defect.
SweepReport sweep_gop_independence(double log_lo, double log_hi, int steps,
                                   const SolverConfig& cfg = {});

/// Classifies the grid {(i*r_max/steps, j*s_max/steps)} over (0, r_max] x
/// (0, s_max] by check_rr_sr_feasible.
SweepReport sweep_rr_sr(double r_max, double s_max, int steps);

/// Classifies (alpha, beta) over linspace(lo, hi, steps)^2 by validity of the
/// scaled-risk model at both treatment levels: valid iff exp(alpha) <= 2 and
/// exp(alpha + beta) <= 2.
SweepReport rbc_region(double lo, double hi, int steps);

} // namespace vipar
