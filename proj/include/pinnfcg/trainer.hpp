#pragma once

// Training protocols: one network per dataset, or one network cycled over all
// datasets. One optimizer step per epoch over the full retained sequence.

#include "pinnfcg/fatigue_physics.hpp"
#include "pinnfcg/network.hpp"
#include "pinnfcg/physics_loss.hpp"
#include "pinnfcg/signal_prep.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pinnfcg {

struct TrainConfig {
    int epochs{50};
    double learning_rate{1e-2};
    std::uint64_t seed{0};
    LossWeights weights;
    int combined_epochs_per_dataset{5};
    double beta1{0.9};
    double beta2{0.999};
    double epsilon{1e-8};
    std::vector<std::size_t> hidden_sizes{16, 16};
    Activation hidden_activation{Activation::Tanh};
    OutputScaling scaling;

    void validate() const;
    std::vector<std::size_t> layer_sizes() const;
};

/// Adaptive moment estimation with bias correction and a fixed step size.
class AdamOptimizer {
public:
    AdamOptimizer(std::size_t parameter_count, double learning_rate, double beta1, double beta2, double epsilon);

    /// Applies one update in place. Throws NumericAbort on a non-finite gradient.
    void step(std::span<double> params, std::span<const double> gradients);

    std::size_t steps_taken() const noexcept { return steps_; }

private:
    double learning_rate_;
    double beta1_;
    double beta2_;
    double epsilon_;
    std::size_t steps_{0};
    std::vector<double> first_moment_;
    std::vector<double> second_moment_;
};

struct PredictOptions {
    /// Starting crack size; defaults to the defect size sqrt(area) in mm.
    std::optional<double> initial_crack_mm;
    IntegrationRule rule{IntegrationRule::LeftEndpoint};
};

struct TrainReport {
    std::vector<LossBreakdown> loss_history;
    /// Dataset visited at each epoch (same length as loss_history).
    std::vector<std::string> epoch_dataset;
    Network final_network;
    std::vector<std::string> dataset_ids;
    std::vector<CrackGrowthPrediction> predictions;
    std::vector<ParisFit> fits;
    /// Epochs past the first 10% of the budget with a nonzero monotonicity term.
    std::vector<int> late_monotonicity_epochs;
};

CrackGrowthPrediction predict(const Network& net,
                              const PreparedDataset& data,
                              const GeometryConfig& geom,
                              const OutputScaling& scaling,
                              const PredictOptions& options = {});

TrainReport train_individual(const PreparedDataset& data,
                             const TrainConfig& cfg,
                             const GeometryConfig& geom,
                             const PredictOptions& predict_options = {});

/// Datasets are visited in id order, combined_epochs_per_dataset consecutive
/// epochs each, cycling until cfg.epochs are spent.
TrainReport train_combined(std::span<const PreparedDataset> datasets,
                           const TrainConfig& cfg,
                           const GeometryConfig& geom,
                           const PredictOptions& predict_options = {});

/// Independent individual trainings, run on up to `jobs` threads. Output order
/// matches input order regardless of scheduling.
std::vector<TrainReport> train_individual_batch(std::span<const PreparedDataset> datasets,
                                                const TrainConfig& cfg,
                                                const GeometryConfig& geom,
                                                int jobs,
                                                const PredictOptions& predict_options = {});

}  // namespace pinnfcg
