#include "pinnfcg/synthetic_data.hpp"

#include "pinnfcg/errors.hpp"
#include "pinnfcg/random.hpp"

#include <cmath>
#include <cstdio>

namespace pinnfcg {

void GeneratorConfig::validate() const {
    try {
        true_paris.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("generator: ") + e.what());
    }
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError(std::string("generator: ") + what + " must be positive");
        }
    };
    positive(initial_crack_mm, "initial_crack_mm");
    positive(stress_amplitude_mpa, "stress_amplitude_mpa");
    positive(sqrt_area_um, "sqrt_area_um");
    positive(hardness_hv, "hardness_hv");
    positive(base_frequency_hz, "base_frequency_hz");
    positive(failure_drop_hz, "failure_drop_hz");
    positive(failure_crack_mm, "failure_crack_mm");
    positive(stiffness_exponent, "stiffness_exponent");
    if (!(sample_interval >= 1.0)) {
        throw ConfigError("generator: sample_interval must be >= 1");
    }
    if (!(runout >= sample_interval)) {
        throw ConfigError("generator: runout must be at least one sample interval");
    }
    if (!(noise_sigma_hz >= 0.0) || !(linear_drift_hz_per_mcycle >= 0.0)) {
        throw ConfigError("generator: noise and drift must be non-negative");
    }
    if (!(initiation_fraction_lo >= 0.0 && initiation_fraction_lo <= initiation_fraction_hi &&
          initiation_fraction_hi < 1.0)) {
        throw ConfigError("generator: initiation fraction range must satisfy 0 <= lo <= hi < 1");
    }
}

namespace {

double crack_drop(const GeneratorConfig& cfg, double a_mm) {
    return cfg.failure_drop_hz * std::pow(a_mm / cfg.failure_crack_mm, cfg.stiffness_exponent);
}

double drift_drop(const GeneratorConfig& cfg, double cycles) {
    return cfg.linear_drift_hz_per_mcycle * cycles * 1.0e-6;
}

double growth_step(const GeneratorConfig& cfg, const GeometryConfig& geom, double a_mm) {
    return paris_rate(cfg.true_paris, sif_range(cfg.stress_amplitude_mpa, a_mm, geom)) * cfg.sample_interval;
}

}  // namespace

GeneratedCoupon generate(const GeneratorConfig& cfg, const GeometryConfig& geom) {
    cfg.validate();
    geom.validate();
    if (crack_drop(cfg, cfg.initial_crack_mm) >= cfg.failure_drop_hz) {
        throw ConfigError("generator: initial crack already meets the failure criterion");
    }

    const auto max_samples = static_cast<std::size_t>(std::floor(cfg.runout / cfg.sample_interval));

    // Length of the growth phase, ignoring drift: samples until the crack-induced
    // drop alone reaches the criterion.
    std::size_t growth_samples = 0;
    {
        double a = cfg.initial_crack_mm;
        while (growth_samples < max_samples) {
            ++growth_samples;
            if (crack_drop(cfg, a) >= cfg.failure_drop_hz) {
                break;
            }
            a += growth_step(cfg, geom, a);
        }
    }

    Rng rng(cfg.seed);
    const double fraction = rng.uniform(cfg.initiation_fraction_lo, cfg.initiation_fraction_hi);
    const auto initiation_samples =
        static_cast<std::size_t>(std::llround(fraction / (1.0 - fraction) * static_cast<double>(growth_samples)));

    GeneratedCoupon out;
    CouponDataset& ds = out.dataset;
    SyntheticTruth& truth = out.truth;
    ds.id = cfg.id;
    ds.sqrt_area_um = cfg.sqrt_area_um;
    ds.stress_amplitude_mpa = cfg.stress_amplitude_mpa;
    ds.hardness_hv = cfg.hardness_hv;
    truth.true_paris = cfg.true_paris;
    truth.initiation_fraction = fraction;
    truth.crack_initiation_index = initiation_samples;

    double a = cfg.initial_crack_mm;
    for (std::size_t k = 0; k < max_samples; ++k) {
        const double cycles = static_cast<double>(k + 1) * cfg.sample_interval;
        double crack = 0.0;
        if (k >= initiation_samples) {
            crack = a;
            a += growth_step(cfg, geom, a);
        }
        const double drop = drift_drop(cfg, cycles) + (crack > 0.0 ? crack_drop(cfg, crack) : 0.0);
        const double noise = cfg.noise_sigma_hz > 0.0 ? cfg.noise_sigma_hz * rng.normal() : 0.0;

        ds.cycles.push_back(cycles);
        ds.frequency_hz.push_back(cfg.base_frequency_hz - drop + noise);
        truth.crack_sizes.push_back(crack);
        if (drop >= cfg.failure_drop_hz) {
            break;
        }
    }
    truth.reached_runout = ds.cycles.size() == max_samples &&
                           drift_drop(cfg, ds.cycles.back()) +
                                   (truth.crack_sizes.back() > 0.0 ? crack_drop(cfg, truth.crack_sizes.back()) : 0.0) <
                               cfg.failure_drop_hz;
    if (ds.cycles.size() < 2) {
        throw ConfigError("generator: coupon fails at the first sample");
    }
    return out;
}

GeneratorConfig batch_member_config(const GeneratorConfig& base,
                                    double stress_level,
                                    std::uint64_t seed,
                                    std::size_t index,
                                    const BatchVariation& variation) {
    if (!(variation.defect_jitter >= 0.0 && variation.defect_jitter < 1.0)) {
        throw ConfigError("generate_batch: defect_jitter must lie in [0, 1)");
    }
    GeneratorConfig cfg = base;
    Rng rng(derive_seed(seed, 2 * index));
    cfg.stress_amplitude_mpa = stress_level;
    cfg.sqrt_area_um = base.sqrt_area_um * rng.uniform(1.0 - variation.defect_jitter, 1.0 + variation.defect_jitter);
    cfg.seed = derive_seed(seed, 2 * index + 1);
    char id[32];
    std::snprintf(id, sizeof id, "coupon_%02zu", index + 1);
    cfg.id = id;
    return cfg;
}

std::vector<GeneratedCoupon> generate_batch(std::size_t n,
                                            const GeneratorConfig& base,
                                            std::span<const double> stress_levels,
                                            std::uint64_t seed,
                                            const GeometryConfig& geom,
                                            const BatchVariation& variation) {
    if (stress_levels.size() != n) {
        throw ConfigError("generate_batch: need one stress level per coupon");
    }
    std::vector<GeneratedCoupon> batch;
    batch.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        batch.push_back(generate(batch_member_config(base, stress_levels[i], seed, i, variation), geom));
    }
    return batch;
}

std::vector<double> stress_ladder(std::size_t n, double lo, double hi) {
    std::vector<double> levels(n);
    for (std::size_t i = 0; i < n; ++i) {
        levels[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return levels;
}

}  // namespace pinnfcg
