#pragma once

// Resonance-frequency telemetry -> scaled network features.

#include "pinnfcg/fatigue_physics.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace pinnfcg {

/// One coupon: scalar metadata plus its (cycles, frequency) record.
struct CouponDataset {
    std::string id;
    double sqrt_area_um{0.0};
    double stress_amplitude_mpa{0.0};
    double hardness_hv{0.0};
    std::vector<double> cycles;
    std::vector<double> frequency_hz;

    void validate() const;
    MaterialPoint material(double murakami_c1 = 1.43) const {
        return {sqrt_area_um, hardness_hv, murakami_c1};
    }
};

/// Network input row: log10 sqrt(area), log10 sigma_a, min-max log10 N, frequency drop.
using FeatureRow = std::array<double, 4>;

struct PreparedDataset {
    std::string source_id;
    std::vector<FeatureRow> features;
    std::vector<double> cycles_retained;
    double sigma_w{0.0};     ///< endurance limit, MPa
    double delta_k_th{0.0};  ///< threshold SIF range, MPa*sqrt(m)
    double sqrt_area_um{0.0};
    double stress_amplitude_mpa{0.0};
    double hardness_hv{0.0};
    std::size_t transition_index{0};  ///< rows discarded from the front
    std::size_t raw_rows{0};

    std::size_t size() const noexcept { return features.size(); }
};

/// Dataset with no detectable nonlinear (crack-growth) region.
struct Runout {
    std::string source_id;
    std::size_t raw_rows{0};
};

using PrepOutcome = std::variant<PreparedDataset, Runout>;

struct PrepConfig {
    int smoothing_window{5};
    int initial_window{50};
    double alpha{3.0};

    void validate() const;
};

/// Centered moving average. Near the ends the window is truncated to the
/// samples that exist, so the output has the input's length.
std::vector<double> moving_average(std::span<const double> values, int window);

/// Grows a least-squares line over the prefix of the series until its fit error
/// jumps by the factor alpha. Returns the number of leading samples that belong
/// to the linear region, or nullopt when the whole series stays linear.
std::optional<std::size_t> detect_transition(std::span<const double> frequency, const PrepConfig& cfg);

/// Frequency drop below the maximum, min-max scaled to [0, 1].
std::vector<double> transform_frequency(std::span<const double> frequency);

PrepOutcome prepare(const CouponDataset& dataset, const MaterialPoint& mat, const PrepConfig& cfg);

}  // namespace pinnfcg
