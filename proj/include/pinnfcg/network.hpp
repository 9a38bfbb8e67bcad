#pragma once

// Feed-forward network mapping one feature row to per-row Paris quantities:
// 4 inputs -> hidden layers -> 3 sigmoid outputs (dK*, C*, m*).

#include "pinnfcg/autodiff.hpp"
#include "pinnfcg/fatigue_physics.hpp"
#include "pinnfcg/signal_prep.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pinnfcg {

inline constexpr std::size_t kNetworkInputs = 4;
inline constexpr std::size_t kNetworkOutputs = 3;

enum class Activation { Tanh, Sigmoid, Relu };

std::string_view to_string(Activation act);
Activation activation_from_string(std::string_view name);

struct DenseLayer {
    std::size_t inputs{0};
    std::size_t outputs{0};
    std::vector<double> weights;  ///< row-major, outputs x inputs
    std::vector<double> biases;
};

struct Network {
    std::vector<std::size_t> layer_sizes;
    std::vector<DenseLayer> layers;
    Activation hidden_activation{Activation::Tanh};
    std::uint64_t seed{0};

    std::size_t parameter_count() const noexcept;
    /// Parameters in layer order, weights before biases within a layer.
    std::vector<double> flatten() const;
    void assign(std::span<const double> params);
    void validate() const;
};

/// Weights uniform in [-1, 1] / sqrt(fan_in), zero biases. Deterministic in seed.
Network init_network(const std::vector<std::size_t>& layer_sizes,
                     std::uint64_t seed,
                     Activation hidden = Activation::Tanh);

/// Maps sigmoid outputs onto log10(C) and m.
struct OutputScaling {
    double c_log10_lo{-16.0};
    double c_log10_hi{-6.0};
    double m_lo{1.0};
    double m_hi{10.0};

    void validate() const;
};

/// Per-row quantities of one forward pass, on tape.
struct ParisVars {
    Var delta_k;
    Var coeff_c;
    Var exponent_m;
    Var rate;
};

/// Registers every network parameter as a leaf, in flatten() order. Binding
/// first makes the leading adjoints of a gradient the parameter gradients.
std::vector<Var> bind_parameters(Tape& tape, const Network& net);

/// Forward pass of one row. dK is rescaled with sigma_w sqrt(W); C and m are
/// mapped through `scaling`; rate = C dK^m.
ParisVars forward(Tape& tape,
                  const Network& net,
                  std::span<const Var> params,
                  const FeatureRow& row,
                  const OutputScaling& scaling,
                  double sigma_w,
                  const GeometryConfig& geom);

}  // namespace pinnfcg
