#pragma once

// Synthetic resonance-fatigue records with a known crack history.
//
// A coupon first runs through a crack-free initiation phase where the
// resonance frequency only drifts linearly. A crack of size a0 then grows by
// forward-integrating Paris's law one sample interval at a time, and the
// frequency drops by failure_drop_hz * (a / failure_crack_mm)^p. The record
// ends at the first sample whose total drop from the reference frequency
// reaches the failure criterion, or at runout.

#include "pinnfcg/fatigue_physics.hpp"
#include "pinnfcg/signal_prep.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pinnfcg {

struct GeneratorConfig {
    ParisParams true_paris{8.63e-10, 3.46};
    double initial_crack_mm{0.05};
    double stress_amplitude_mpa{300.0};
    double sqrt_area_um{100.0};
    double hardness_hv{220.0};
    double base_frequency_hz{150.0};
    double linear_drift_hz_per_mcycle{0.05};
    double failure_drop_hz{2.0};
    double failure_crack_mm{5.0};  ///< crack size whose drop alone meets the criterion
    double sample_interval{1000.0};
    double runout{1.0e7};
    double stiffness_exponent{2.0};
    double noise_sigma_hz{0.005};
    double initiation_fraction_lo{0.4};
    double initiation_fraction_hi{0.8};
    std::uint64_t seed{0};
    std::string id{"coupon_01"};

    void validate() const;
};

struct SyntheticTruth {
    std::size_t crack_initiation_index{0};  ///< first sample carrying a crack
    std::vector<double> crack_sizes;        ///< mm, zero before initiation
    ParisParams true_paris;
    double initiation_fraction{0.0};
    bool reached_runout{false};
};

struct GeneratedCoupon {
    CouponDataset dataset;
    SyntheticTruth truth;
};

GeneratedCoupon generate(const GeneratorConfig& cfg, const GeometryConfig& geom);

/// Spread of per-coupon variation within a batch.
struct BatchVariation {
    double defect_jitter{0.2};  ///< sqrt(area) scaled by U(1 - j, 1 + j)
};

/// Configuration of the coupon at `index` in a batch: the given stress level,
/// jittered defect size, derived noise seed and sequential id.
GeneratorConfig batch_member_config(const GeneratorConfig& base,
                                    double stress_level,
                                    std::uint64_t seed,
                                    std::size_t index,
                                    const BatchVariation& variation = {});

/// One coupon per stress level. Ids are coupon_01, coupon_02, ...; each coupon
/// draws its defect jitter and noise from a seed derived from `seed`.
std::vector<GeneratedCoupon> generate_batch(std::size_t n,
                                            const GeneratorConfig& base,
                                            std::span<const double> stress_levels,
                                            std::uint64_t seed,
                                            const GeometryConfig& geom,
                                            const BatchVariation& variation = {});

/// n stress levels evenly spaced over [lo, hi].
std::vector<double> stress_ladder(std::size_t n, double lo, double hi);

}  // namespace pinnfcg
