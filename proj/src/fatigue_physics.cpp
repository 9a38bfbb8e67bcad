#include "pinnfcg/fatigue_physics.hpp"

#include "pinnfcg/errors.hpp"
#include "pinnfcg/linear_fit.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pinnfcg {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(value));
    }
}

void require_non_negative(double value, const char* what) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(what) + " must be non-negative and finite, got " + std::to_string(value));
    }
}

}  // namespace

void MaterialPoint::validate() const {
    require_positive(sqrt_area_um, "sqrt_area_um");
    require_positive(hardness_hv, "hardness_hv");
    require_positive(murakami_c1, "murakami_c1");
}

void GeometryConfig::validate() const {
    require_positive(gauge_width_mm, "gauge_width_mm");
    require_positive(geometry_factor, "geometry_factor");
    if (!(runout_cycles >= 1.0)) {
        throw DomainError("runout_cycles must be >= 1");
    }
}

void ParisParams::validate() const {
    require_positive(coeff_c, "paris coeff_c");
    require_positive(exponent_m, "paris exponent_m");
}

namespace {

// The Murakami formulas are evaluated on their algebraic domain. A hardness of
// zero violates the MaterialPoint invariant but is left to the caller.
void require_formula_domain(const MaterialPoint& mat) {
    require_positive(mat.sqrt_area_um, "sqrt_area_um");
    require_positive(mat.murakami_c1, "murakami_c1");
    require_positive(mat.hardness_hv + 120.0, "hardness_hv + 120");
}

}  // namespace

double endurance_limit(const MaterialPoint& mat) {
    require_formula_domain(mat);
    return mat.murakami_c1 * (mat.hardness_hv + 120.0) / std::pow(mat.sqrt_area_um, 1.0 / 6.0);
}

double threshold_sif(const MaterialPoint& mat) {
    require_formula_domain(mat);
    return 3.3e-3 * (mat.hardness_hv + 120.0) * std::cbrt(mat.sqrt_area_um);
}

double sif_range(double stress_amplitude_mpa, double crack_size_mm, const GeometryConfig& geom) {
    require_non_negative(stress_amplitude_mpa, "stress amplitude");
    require_non_negative(crack_size_mm, "crack size");
    const double a_m = crack_size_mm * 1.0e-3;
    return 2.0 * geom.geometry_factor * stress_amplitude_mpa * std::sqrt(std::numbers::pi * a_m);
}

double nondim_sif(double delta_k, double sigma_w, const GeometryConfig& geom) {
    require_positive(sigma_w, "sigma_w");
    return delta_k / (sigma_w * std::sqrt(geom.gauge_width_m()));
}

double redim_sif(double delta_k_star, double sigma_w, const GeometryConfig& geom) {
    require_positive(sigma_w, "sigma_w");
    return delta_k_star * sigma_w * std::sqrt(geom.gauge_width_m());
}

double nondim_crack(double crack_size_mm, const GeometryConfig& geom) {
    if (crack_size_mm < 0.0) {
        throw DomainError("crack size must be non-negative");
    }
    return crack_size_mm / geom.gauge_width_mm;
}

double redim_crack(double crack_star, const GeometryConfig& geom) { return crack_star * geom.gauge_width_mm; }

double nondim_cycles(double cycles, const GeometryConfig& geom) {
    if (cycles < 0.0) {
        throw DomainError("cycle count must be non-negative");
    }
    return cycles / geom.runout_cycles;
}

double redim_cycles(double cycles_star, const GeometryConfig& geom) { return cycles_star * geom.runout_cycles; }

double paris_rate(const ParisParams& params, double delta_k) {
    require_positive(delta_k, "delta_k");
    return params.coeff_c * std::pow(delta_k, params.exponent_m);
}

std::vector<double> integrate_crack_size(std::span<const double> rate,
                                         std::span<const double> cycles,
                                         double a0_mm,
                                         IntegrationRule rule) {
    if (rate.size() != cycles.size()) {
        throw DomainError("integrate_crack_size: rate and cycles differ in length");
    }
    if (rate.size() < 2) {
        throw DomainError("integrate_crack_size: need at least two samples");
    }
    std::vector<double> a(rate.size());
    a[0] = a0_mm;
    for (std::size_t i = 0; i + 1 < rate.size(); ++i) {
        const double dn = cycles[i + 1] - cycles[i];
        if (!(dn > 0.0)) {
            throw DomainError("integrate_crack_size: cycles must be strictly increasing (index " +
                              std::to_string(i + 1) + ")");
        }
        const double step = rule == IntegrationRule::LeftEndpoint ? rate[i] : 0.5 * (rate[i] + rate[i + 1]);
        a[i + 1] = a[i] + step * dn;
    }
    return a;
}

ParisFit fit_paris_constants(std::span<const double> delta_k, std::span<const double> rate) {
    if (delta_k.size() != rate.size()) {
        throw DomainError("fit_paris_constants: inputs differ in length");
    }
    std::vector<double> x(delta_k.size());
    std::vector<double> y(rate.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        require_positive(delta_k[i], "delta_k");
        require_positive(rate[i], "rate");
        x[i] = std::log10(delta_k[i]);
        y[i] = std::log10(rate[i]);
    }
    const LineFit line = fit_line(x, y);
    ParisFit fit;
    fit.params.exponent_m = line.slope;
    fit.params.coeff_c = std::pow(10.0, line.intercept);
    fit.r_squared = line.r_squared;
    fit.n_points = line.n;
    return fit;
}

const std::array<LiteratureParis, 5>& literature_paris_constants() {
    static const std::array<LiteratureParis, 5> table{{
        {"kluczynski2020", "Kluczynski et al., Materials 13 (2020) 3259", 58.64, "parallel", {2.00e-14, 5.86}},
        {"riemer2014", "Riemer et al., Eng Fract Mech 120 (2014) 15-25", 0.0, "parallel", {2.12e-9, 3.37}},
        {"camacho2023_a", "Camacho et al., Fatigue Fract Eng Mater Struct 46 (2023)", 95.2, "perpendicular",
         {8.63e-10, 3.46}},
        {"camacho2023_b", "Camacho et al., Fatigue Fract Eng Mater Struct 46 (2023)", 95.2, "perpendicular",
         {1.74e-10, 3.55}},
        {"camacho2023_c", "Camacho et al., Fatigue Fract Eng Mater Struct 46 (2023)", 95.2, "perpendicular",
         {2.50e-10, 3.76}},
    }};
    return table;
}

}  // namespace pinnfcg
