#pragma once

// Helpers shared by the unit tests and the acceptance runner.

#include "pinnfcg/fatigue_physics.hpp"
#include "pinnfcg/network.hpp"
#include "pinnfcg/physics_loss.hpp"
#include "pinnfcg/signal_prep.hpp"
#include "pinnfcg/synthetic_data.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pinnfcg::testing {

/// Which scalar of a loss evaluation to differentiate.
enum class Objective { Ic, Bc, MonA, MonK, Rss, Total };

inline constexpr Objective kAllObjectives[] = {Objective::Ic,  Objective::Bc,  Objective::MonA,
                                               Objective::MonK, Objective::Rss, Objective::Total};

const char* objective_name(Objective o);

/// Random network and prepared dataset for gradient checks.
struct GradientCase {
    Network net;
    PreparedDataset data;
    OutputScaling scaling;
    GeometryConfig geom;
    LossWeights weights;
};

GradientCase random_gradient_case(std::uint64_t seed, std::size_t rows = 30);

struct GradientCheck {
    double relative_error{0.0};  ///< |g_analytic - g_fd| / max(|g_analytic|, |g_fd|) over kept components
    double value{0.0};
    std::size_t compared{0};
    std::size_t skipped{0};  ///< components whose +-h perturbation moves a kink node to its other branch
};

/// Central differences with step `h` on every network parameter, for all six
/// objectives at once. A component is compared only when abs, negative-part
/// and floor nodes keep their branch at both theta + h and theta - h, so the
/// difference quotient never straddles a kink.
std::array<GradientCheck, 6> check_gradients(const GradientCase& c, double h = 1e-6);
GradientCheck check_gradient(const GradientCase& c, Objective objective, double h = 1e-6);

/// The default synthetic batch run through signal_prep. Runouts are dropped.
std::vector<PreparedDataset> prepared_batch(std::size_t n, std::uint64_t seed, const GeometryConfig& geom = {},
                                            const PrepConfig& prep = {});

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

double sample_stddev(const std::vector<double>& values);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace pinnfcg::testing
