#include "pinnfcg/signal_prep.hpp"

#include "pinnfcg/errors.hpp"
#include "pinnfcg/linear_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pinnfcg {

void CouponDataset::validate() const {
    if (cycles.size() != frequency_hz.size()) {
        throw DomainError("coupon " + id + ": cycles and frequency differ in length");
    }
    if (cycles.size() < 3) {
        throw DomainError("coupon " + id + ": need at least three samples");
    }
    for (std::size_t i = 1; i < cycles.size(); ++i) {
        if (!(cycles[i] > cycles[i - 1])) {
            throw DomainError("coupon " + id + ": cycles not strictly increasing at row " + std::to_string(i));
        }
    }
    if (!(cycles.front() > 0.0)) {
        throw DomainError("coupon " + id + ": cycle counts must be positive");
    }
    if (!(stress_amplitude_mpa > 0.0) || !(sqrt_area_um > 0.0)) {
        throw DomainError("coupon " + id + ": stress amplitude and defect size must be positive");
    }
}

void PrepConfig::validate() const {
    if (smoothing_window < 1 || smoothing_window % 2 == 0) {
        throw ConfigError("smoothing_window must be a positive odd integer");
    }
    if (initial_window < 3) {
        throw ConfigError("initial_window must be at least 3");
    }
    if (!(alpha > 1.0)) {
        throw ConfigError("alpha must exceed 1");
    }
}

std::vector<double> moving_average(std::span<const double> values, int window) {
    if (window < 1 || window % 2 == 0) {
        throw ConfigError("moving_average: window must be a positive odd integer");
    }
    if (static_cast<std::size_t>(window) > values.size()) {
        throw ConfigError("moving_average: window longer than series");
    }
    const std::size_t n = values.size();
    const std::size_t half = static_cast<std::size_t>(window / 2);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(i + half, n - 1);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            sum += values[j];
        }
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::optional<std::size_t> detect_transition(std::span<const double> frequency, const PrepConfig& cfg) {
    cfg.validate();
    const auto w0 = static_cast<std::size_t>(cfg.initial_window);
    if (frequency.size() < w0 + 1) {
        throw DomainError("detect_transition: series shorter than initial window + 1");
    }

    // Fit error is compared per residual degree of freedom, so a window that
    // merely grows longer over stationary noise does not trip the threshold.
    // The floor keeps exactly linear data from stopping on rounding noise.
    const double mean_f =
        std::accumulate(frequency.begin(), frequency.end(), 0.0) / static_cast<double>(frequency.size());
    const double rss_floor = 1e-12 * mean_f * mean_f;

    RunningLineFit line;
    double min_variance = 0.0;
    for (std::size_t w = 1; w <= frequency.size(); ++w) {
        line.add(static_cast<double>(w - 1), frequency[w - 1]);
        if (w < w0) {
            continue;
        }
        const double dof = static_cast<double>(w - 2);
        const double rss = line.rss();
        if (w == w0) {
            min_variance = rss / dof;
            continue;
        }
        if (rss >= cfg.alpha * std::max(min_variance * dof, rss_floor)) {
            return w - 1;
        }
        min_variance = std::min(min_variance, rss / dof);
    }
    return std::nullopt;
}

std::vector<double> transform_frequency(std::span<const double> frequency) {
    if (frequency.size() < 2) {
        throw DomainError("transform_frequency: need at least two samples");
    }
    const auto [lo_it, hi_it] = std::minmax_element(frequency.begin(), frequency.end());
    const double f_max = *hi_it;
    const double range = *hi_it - *lo_it;
    if (!(range > 0.0)) {
        throw DegenerateError("transform_frequency: constant frequency has no drop to scale");
    }
    // drop d = f_max - f spans [0, range], so min-max scaling divides by range
    std::vector<double> out(frequency.size());
    for (std::size_t i = 0; i < frequency.size(); ++i) {
        out[i] = std::clamp((f_max - frequency[i]) / range, 0.0, 1.0);
    }
    return out;
}

PrepOutcome prepare(const CouponDataset& dataset, const MaterialPoint& mat, const PrepConfig& cfg) {
    dataset.validate();
    mat.validate();
    cfg.validate();

    const std::vector<double> smoothed = moving_average(dataset.frequency_hz, cfg.smoothing_window);
    const std::optional<std::size_t> omega = detect_transition(smoothed, cfg);
    if (!omega) {
        return Runout{dataset.id, dataset.cycles.size()};
    }

    const std::size_t cut = *omega;
    const std::size_t n = dataset.cycles.size() - cut;
    if (n < 2) {
        throw DegenerateError("coupon " + dataset.id + ": fewer than two rows after the transition");
    }

    PreparedDataset out;
    out.source_id = dataset.id;
    out.transition_index = cut;
    out.raw_rows = dataset.cycles.size();
    out.sqrt_area_um = dataset.sqrt_area_um;
    out.stress_amplitude_mpa = dataset.stress_amplitude_mpa;
    out.hardness_hv = dataset.hardness_hv;
    out.cycles_retained.assign(dataset.cycles.begin() + static_cast<std::ptrdiff_t>(cut), dataset.cycles.end());

    const std::span<const double> retained_f(smoothed.data() + cut, n);
    const std::vector<double> drop = transform_frequency(retained_f);

    const double log_n_lo = std::log10(out.cycles_retained.front());
    const double log_n_hi = std::log10(out.cycles_retained.back());
    const double log_area = std::log10(dataset.sqrt_area_um);
    const double log_stress = std::log10(dataset.stress_amplitude_mpa);

    out.features.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double log_n = std::log10(out.cycles_retained[i]);
        // cycles are strictly increasing, so the first and last rows are the extremes
        double scaled = (log_n - log_n_lo) / (log_n_hi - log_n_lo);
        if (i == 0) {
            scaled = 0.0;
        } else if (i + 1 == n) {
            scaled = 1.0;
        }
        out.features[i] = {log_area, log_stress, scaled, drop[i]};
    }

    out.sigma_w = endurance_limit(mat);
    out.delta_k_th = threshold_sif(mat);
    return out;
}

}  // namespace pinnfcg
