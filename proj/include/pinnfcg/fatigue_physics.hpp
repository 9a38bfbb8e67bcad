#pragma once

// Closed-form fatigue relations used throughout the pipeline.
//
// Unit conventions:
//   defect size sqrt(area)  micrometers
//   crack size a, width W   millimeters
//   stress                  MPa
//   SIF range dK            MPa*sqrt(m)
//   Paris C                 (mm/cycle) / (MPa*sqrt(m))^m
//   growth rate da/dN       mm/cycle

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace pinnfcg {

struct MaterialPoint {
    double sqrt_area_um{0.0};
    double hardness_hv{0.0};
    double murakami_c1{1.43};  ///< surface-defect coefficient

    void validate() const;
};

struct GeometryConfig {
    double gauge_width_mm{5.0};
    double geometry_factor{0.65};
    double runout_cycles{1.0e7};

    void validate() const;
    double gauge_width_m() const noexcept { return gauge_width_mm * 1.0e-3; }
};

struct ParisParams {
    double coeff_c{0.0};
    double exponent_m{0.0};

    void validate() const;
};

struct ParisFit {
    ParisParams params;
    double r_squared{0.0};
    std::size_t n_points{0};
};

/// Per-row crack growth quantities predicted for one dataset.
struct CrackGrowthPrediction {
    std::vector<double> cycles;
    std::vector<double> delta_k;
    std::vector<double> paris_c;
    std::vector<double> paris_m;
    std::vector<double> rate;
    std::vector<double> crack_size;
    ParisFit fit;

    std::size_t size() const noexcept { return rate.size(); }
    double final_crack_mm() const { return crack_size.empty() ? 0.0 : crack_size.back(); }
};

enum class IntegrationRule { LeftEndpoint, Trapezoidal };

/// Murakami lower-bound endurance limit, MPa.
double endurance_limit(const MaterialPoint& mat);

/// Murakami-Endo threshold SIF range, MPa*sqrt(m).
double threshold_sif(const MaterialPoint& mat);

/// dK = 2 Y sigma_a sqrt(pi a), a given in mm.
double sif_range(double stress_amplitude_mpa, double crack_size_mm, const GeometryConfig& geom);

/// dK* = dK / (sigma_w sqrt(W)), W in meters.
double nondim_sif(double delta_k, double sigma_w, const GeometryConfig& geom);
double redim_sif(double delta_k_star, double sigma_w, const GeometryConfig& geom);

double nondim_crack(double crack_size_mm, const GeometryConfig& geom);
double redim_crack(double crack_star, const GeometryConfig& geom);
double nondim_cycles(double cycles, const GeometryConfig& geom);
double redim_cycles(double cycles_star, const GeometryConfig& geom);

/// da/dN = C dK^m.
double paris_rate(const ParisParams& params, double delta_k);

/// Discrete integration of da/dN over the cycle axis starting from a0.
/// Left-endpoint: a[i+1] = a[i] + rate[i] * (N[i+1] - N[i]).
std::vector<double> integrate_crack_size(std::span<const double> rate,
                                         std::span<const double> cycles,
                                         double a0_mm,
                                         IntegrationRule rule = IntegrationRule::LeftEndpoint);

/// Least squares of log10(rate) on log10(dK); slope is m, intercept log10(C).
ParisFit fit_paris_constants(std::span<const double> delta_k, std::span<const double> rate);

/// Published Paris constants for LPBF 316L used as reference values.
struct LiteratureParis {
    std::string_view label;
    std::string_view source;
    double energy_density_j_mm3;  ///< 0 when not reported
    std::string_view growth_vs_build;
    ParisParams params;
};

const std::array<LiteratureParis, 5>& literature_paris_constants();

}  // namespace pinnfcg
