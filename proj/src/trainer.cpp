#include "pinnfcg/trainer.hpp"

#include "pinnfcg/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

namespace pinnfcg {

void TrainConfig::validate() const {
    if (epochs < 1) {
        throw ConfigError("epochs must be >= 1");
    }
    if (!(learning_rate > 0.0)) {
        throw ConfigError("learning_rate must be positive");
    }
    if (combined_epochs_per_dataset < 1) {
        throw ConfigError("combined_epochs_per_dataset must be >= 1");
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw ConfigError("moment decay rates must lie in [0, 1)");
    }
    if (!(epsilon > 0.0)) {
        throw ConfigError("optimizer epsilon must be positive");
    }
    if (hidden_sizes.empty()) {
        throw ConfigError("at least one hidden layer is required");
    }
    for (std::size_t h : hidden_sizes) {
        if (h == 0) {
            throw ConfigError("hidden layer sizes must be >= 1");
        }
    }
    weights.validate();
    scaling.validate();
}

std::vector<std::size_t> TrainConfig::layer_sizes() const {
    std::vector<std::size_t> sizes{kNetworkInputs};
    sizes.insert(sizes.end(), hidden_sizes.begin(), hidden_sizes.end());
    sizes.push_back(kNetworkOutputs);
    return sizes;
}

AdamOptimizer::AdamOptimizer(std::size_t parameter_count,
                             double learning_rate,
                             double beta1,
                             double beta2,
                             double epsilon)
    : learning_rate_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      epsilon_(epsilon),
      first_moment_(parameter_count, 0.0),
      second_moment_(parameter_count, 0.0) {}

void AdamOptimizer::step(std::span<double> params, std::span<const double> gradients) {
    if (params.size() != first_moment_.size() || gradients.size() != first_moment_.size()) {
        throw std::invalid_argument("AdamOptimizer::step: size mismatch");
    }
    for (double g : gradients) {
        if (!std::isfinite(g)) {
            throw NumericAbort("gradient", static_cast<int>(steps_ + 1));
        }
    }
    ++steps_;
    const double t = static_cast<double>(steps_);
    const double correction1 = 1.0 - std::pow(beta1_, t);
    const double correction2 = 1.0 - std::pow(beta2_, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = gradients[i];
        first_moment_[i] = beta1_ * first_moment_[i] + (1.0 - beta1_) * g;
        second_moment_[i] = beta2_ * second_moment_[i] + (1.0 - beta2_) * g * g;
        const double m_hat = first_moment_[i] / correction1;
        const double v_hat = second_moment_[i] / correction2;
        params[i] -= learning_rate_ * m_hat / (std::sqrt(v_hat) + epsilon_);
    }
}

CrackGrowthPrediction predict(const Network& net,
                              const PreparedDataset& data,
                              const GeometryConfig& geom,
                              const OutputScaling& scaling,
                              const PredictOptions& options) {
    Tape tape;
    const std::vector<Var> params = bind_parameters(tape, net);

    CrackGrowthPrediction pred;
    const std::size_t n = data.size();
    pred.cycles = data.cycles_retained;
    pred.delta_k.reserve(n);
    pred.paris_c.reserve(n);
    pred.paris_m.reserve(n);
    pred.rate.reserve(n);
    for (const FeatureRow& row : data.features) {
        const ParisVars out = forward(tape, net, params, row, scaling, data.sigma_w, geom);
        pred.delta_k.push_back(out.delta_k.value());
        pred.paris_c.push_back(out.coeff_c.value());
        pred.paris_m.push_back(out.exponent_m.value());
        pred.rate.push_back(out.rate.value());
    }
    const double a0 = options.initial_crack_mm.value_or(data.sqrt_area_um * 1.0e-3);
    pred.crack_size = integrate_crack_size(pred.rate, pred.cycles, a0, options.rule);
    pred.fit = fit_paris_constants(pred.delta_k, pred.rate);
    return pred;
}

namespace {

void check_finite(const LossBreakdown& b, int epoch) {
    const double values[] = {b.l_ic, b.l_bc, b.l_mon_a, b.l_mon_k, b.l_rss};
    for (std::size_t i = 0; i < std::size(values); ++i) {
        if (!std::isfinite(values[i])) {
            throw NumericAbort(std::string(kLossTermNames[i]), epoch);
        }
    }
    if (!std::isfinite(b.total)) {
        throw NumericAbort("total", epoch);
    }
}

/// Shared loop: `pick(epoch)` chooses the dataset trained on at that epoch.
void run_epochs(Network& net,
                const TrainConfig& cfg,
                const GeometryConfig& geom,
                const std::function<const PreparedDataset&(int)>& pick,
                TrainReport& report) {
    AdamOptimizer optimizer(net.parameter_count(), cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon);
    const int grace = std::max(1, static_cast<int>(std::ceil(0.1 * cfg.epochs)));
    const std::size_t p = net.parameter_count();
    Tape tape;

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const PreparedDataset& data = pick(epoch);
        tape.clear();
        const std::vector<Var> params = bind_parameters(tape, net);

        LossEvaluation eval;
        try {
            eval = evaluate_loss(tape, net, params, data, cfg.scaling, geom, cfg.weights);
        } catch (const DomainError& e) {
            throw NumericAbort(std::string("loss evaluation (") + e.what() + ")", epoch);
        }
        check_finite(eval.breakdown, epoch);

        report.loss_history.push_back(eval.breakdown);
        report.epoch_dataset.push_back(data.source_id);
        if (epoch > grace && (eval.breakdown.l_mon_a > 0.0 || eval.breakdown.l_mon_k > 0.0)) {
            report.late_monotonicity_epochs.push_back(epoch);
        }

        const std::vector<double> adjoint = tape.gradient(eval.total);
        std::vector<double> theta = net.flatten();
        try {
            optimizer.step(theta, std::span<const double>(adjoint.data(), p));
        } catch (const NumericAbort&) {
            throw NumericAbort("gradient", epoch);
        }
        net.assign(theta);
    }
}

}  // namespace

TrainReport train_individual(const PreparedDataset& data,
                             const TrainConfig& cfg,
                             const GeometryConfig& geom,
                             const PredictOptions& predict_options) {
    cfg.validate();
    TrainReport report;
    report.final_network = init_network(cfg.layer_sizes(), cfg.seed, cfg.hidden_activation);
    run_epochs(
        report.final_network, cfg, geom, [&](int) -> const PreparedDataset& { return data; }, report);

    report.dataset_ids.push_back(data.source_id);
    report.predictions.push_back(predict(report.final_network, data, geom, cfg.scaling, predict_options));
    report.fits.push_back(report.predictions.back().fit);
    return report;
}

TrainReport train_combined(std::span<const PreparedDataset> datasets,
                           const TrainConfig& cfg,
                           const GeometryConfig& geom,
                           const PredictOptions& predict_options) {
    cfg.validate();
    if (datasets.size() < 2) {
        throw ConfigError("combined training needs at least two datasets");
    }
    std::vector<const PreparedDataset*> order;
    order.reserve(datasets.size());
    for (const PreparedDataset& d : datasets) {
        order.push_back(&d);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const PreparedDataset* a, const PreparedDataset* b) { return a->source_id < b->source_id; });

    TrainReport report;
    report.final_network = init_network(cfg.layer_sizes(), cfg.seed, cfg.hidden_activation);
    const auto per = static_cast<std::size_t>(cfg.combined_epochs_per_dataset);
    run_epochs(
        report.final_network, cfg, geom,
        [&](int epoch) -> const PreparedDataset& {
            const std::size_t slot = (static_cast<std::size_t>(epoch - 1) / per) % order.size();
            return *order[slot];
        },
        report);

    // predictions follow the caller's dataset order
    for (const PreparedDataset& d : datasets) {
        report.dataset_ids.push_back(d.source_id);
        report.predictions.push_back(predict(report.final_network, d, geom, cfg.scaling, predict_options));
        report.fits.push_back(report.predictions.back().fit);
    }
    return report;
}

std::vector<TrainReport> train_individual_batch(std::span<const PreparedDataset> datasets,
                                                const TrainConfig& cfg,
                                                const GeometryConfig& geom,
                                                int jobs,
                                                const PredictOptions& predict_options) {
    std::vector<TrainReport> reports(datasets.size());
    std::vector<std::exception_ptr> errors(datasets.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < datasets.size(); i = next++) {
            try {
                reports[i] = train_individual(datasets[i], cfg, geom, predict_options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const auto threads = static_cast<std::size_t>(std::clamp<int>(jobs, 1, 256));
    if (threads <= 1 || datasets.size() <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(threads, datasets.size()); ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return reports;
}

}  // namespace pinnfcg
