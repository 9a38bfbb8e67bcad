#pragma once

// The five physics residuals and their weighted total, built on a tape. No
// term compares against measured crack sizes.

#include "pinnfcg/autodiff.hpp"
#include "pinnfcg/fatigue_physics.hpp"
#include "pinnfcg/network.hpp"
#include "pinnfcg/signal_prep.hpp"

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace pinnfcg {

struct LossWeights {
    double w_ic{1.0};
    double w_bc{1.0};
    double w_mon_a{1.0e4};
    double w_mon_k{10.0};
    double w_rss{10.0};

    void validate() const;
};

struct LossBreakdown {
    double l_ic{0.0};
    double l_bc{0.0};
    double l_mon_a{0.0};
    double l_mon_k{0.0};
    double l_rss{0.0};
    double total{0.0};
    LossWeights weights;
};

/// Tape nodes of the individual terms.
struct LossTerms {
    Var ic;
    Var bc;
    Var mon_a;
    Var mon_k;
    Var rss;
};

inline constexpr double kIntegratedCrackFloorMm = 1e-30;
inline constexpr double kRegressionVarianceFloor = 1e-18;

/// |dK_1 - dK_th|
Var loss_ic(Var delta_k_first, double delta_k_th);

/// |log10 W - log10(sum_i rate_i (N_{i+1} - N_i))|, both lengths in mm. The
/// sum is floored at kIntegratedCrackFloorMm before the logarithm.
Var loss_bc(std::span<const Var> rates, std::span<const double> cycles, const GeometryConfig& geom);

/// Sum of the magnitudes of the negative steps rate_{i+1} - rate_i.
Var loss_mon_a(std::span<const Var> rates);

/// Sum of the magnitudes of the negative steps dK_{i+1} - dK_i.
Var loss_mon_k(std::span<const Var> delta_ks);

/// Residual sum of squares of the least-squares line of log10(rate) on
/// log10(dK), differentiable through the slope and intercept.
Var loss_rss(std::span<const Var> delta_ks, std::span<const Var> rates);

/// Weighted sum of the terms plus the detached values.
std::pair<Var, LossBreakdown> total_loss(const LossTerms& terms, const LossWeights& weights);

/// Everything one loss evaluation over a prepared dataset puts on the tape.
struct LossEvaluation {
    Var total;
    LossTerms terms;
    LossBreakdown breakdown;
    std::vector<ParisVars> rows;
};

/// Runs the network over every retained row of `data` and composes the loss.
/// `params` must come from bind_parameters on the same tape.
LossEvaluation evaluate_loss(Tape& tape,
                             const Network& net,
                             std::span<const Var> params,
                             const PreparedDataset& data,
                             const OutputScaling& scaling,
                             const GeometryConfig& geom,
                             const LossWeights& weights);

/// Names used for diagnostics and CSV columns, in breakdown order.
inline constexpr std::string_view kLossTermNames[] = {"l_ic", "l_bc", "l_mon_a", "l_mon_k", "l_rss"};

}  // namespace pinnfcg
