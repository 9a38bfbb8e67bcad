#include "pinnfcg/network.hpp"

#include "pinnfcg/errors.hpp"
#include "pinnfcg/random.hpp"

#include <cmath>
#include <string>

namespace pinnfcg {

std::string_view to_string(Activation act) {
    switch (act) {
        case Activation::Tanh:
            return "tanh";
        case Activation::Sigmoid:
            return "sigmoid";
        case Activation::Relu:
            return "relu";
    }
    return "tanh";
}

Activation activation_from_string(std::string_view name) {
    if (name == "tanh") {
        return Activation::Tanh;
    }
    if (name == "sigmoid") {
        return Activation::Sigmoid;
    }
    if (name == "relu") {
        return Activation::Relu;
    }
    throw ConfigError("unknown activation '" + std::string(name) + "'");
}

std::size_t Network::parameter_count() const noexcept {
    std::size_t n = 0;
    for (const DenseLayer& layer : layers) {
        n += layer.weights.size() + layer.biases.size();
    }
    return n;
}

std::vector<double> Network::flatten() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    for (const DenseLayer& layer : layers) {
        out.insert(out.end(), layer.weights.begin(), layer.weights.end());
        out.insert(out.end(), layer.biases.begin(), layer.biases.end());
    }
    return out;
}

void Network::assign(std::span<const double> params) {
    if (params.size() != parameter_count()) {
        throw std::invalid_argument("Network::assign: expected " + std::to_string(parameter_count()) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    std::size_t k = 0;
    for (DenseLayer& layer : layers) {
        for (double& w : layer.weights) {
            w = params[k++];
        }
        for (double& b : layer.biases) {
            b = params[k++];
        }
    }
}

void Network::validate() const {
    if (layer_sizes.size() < 2 || layer_sizes.front() != kNetworkInputs || layer_sizes.back() != kNetworkOutputs) {
        throw ConfigError("network must map 4 inputs to 3 outputs");
    }
    if (layers.size() + 1 != layer_sizes.size()) {
        throw ConfigError("network layer count does not match layer_sizes");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const DenseLayer& layer = layers[l];
        if (layer.inputs != layer_sizes[l] || layer.outputs != layer_sizes[l + 1] ||
            layer.weights.size() != layer.inputs * layer.outputs || layer.biases.size() != layer.outputs) {
            throw ConfigError("network layer " + std::to_string(l) + " has inconsistent shape");
        }
        for (double w : layer.weights) {
            if (!std::isfinite(w)) {
                throw ConfigError("network layer " + std::to_string(l) + " has a non-finite weight");
            }
        }
        for (double b : layer.biases) {
            if (!std::isfinite(b)) {
                throw ConfigError("network layer " + std::to_string(l) + " has a non-finite bias");
            }
        }
    }
}

Network init_network(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed, Activation hidden) {
    if (layer_sizes.size() < 2) {
        throw ConfigError("init_network: need at least an input and an output layer");
    }
    for (std::size_t s : layer_sizes) {
        if (s == 0) {
            throw ConfigError("init_network: layer sizes must be >= 1");
        }
    }
    Network net;
    net.layer_sizes = layer_sizes;
    net.hidden_activation = hidden;
    net.seed = seed;

    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        DenseLayer layer;
        layer.inputs = layer_sizes[l];
        layer.outputs = layer_sizes[l + 1];
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.inputs));
        layer.weights.resize(layer.inputs * layer.outputs);
        for (double& w : layer.weights) {
            w = rng.uniform(-bound, bound);
        }
        layer.biases.assign(layer.outputs, 0.0);
        net.layers.push_back(std::move(layer));
    }
    net.validate();
    return net;
}

void OutputScaling::validate() const {
    if (!(c_log10_lo < c_log10_hi)) {
        throw ConfigError("output scaling: c_log10 range must satisfy lo < hi");
    }
    if (!(m_lo < m_hi)) {
        throw ConfigError("output scaling: m range must satisfy lo < hi");
    }
}

std::vector<Var> bind_parameters(Tape& tape, const Network& net) {
    std::vector<Var> vars;
    vars.reserve(net.parameter_count());
    for (double p : net.flatten()) {
        vars.push_back(tape.leaf(p));
    }
    return vars;
}

namespace {

Var activate(Tape& tape, Var x, Activation act) {
    switch (act) {
        case Activation::Tanh:
            return tape.tanh(x);
        case Activation::Sigmoid:
            return tape.sigmoid(x);
        case Activation::Relu:
            // max(0, x) == max(0, -(-x))
            return tape.negative_part(tape.scale(x, -1.0));
    }
    return tape.tanh(x);
}

}  // namespace

ParisVars forward(Tape& tape,
                  const Network& net,
                  std::span<const Var> params,
                  const FeatureRow& row,
                  const OutputScaling& scaling,
                  double sigma_w,
                  const GeometryConfig& geom) {
    if (params.size() != net.parameter_count()) {
        throw std::invalid_argument("forward: parameter binding does not match the network");
    }

    std::vector<Var> activations;
    std::size_t offset = 0;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const DenseLayer& layer = net.layers[l];
        const bool is_output = l + 1 == net.layers.size();
        const std::span<const Var> weights = params.subspan(offset, layer.weights.size());
        const std::span<const Var> biases = params.subspan(offset + layer.weights.size(), layer.outputs);
        offset += layer.weights.size() + layer.outputs;

        std::vector<Var> next;
        next.reserve(layer.outputs);
        for (std::size_t j = 0; j < layer.outputs; ++j) {
            const std::span<const Var> w_row = weights.subspan(j * layer.inputs, layer.inputs);
            const Var z = l == 0 ? tape.affine(w_row, std::span<const double>(row), biases[j])
                                 : tape.affine(w_row, std::span<const Var>(activations), biases[j]);
            next.push_back(is_output ? tape.sigmoid(z) : activate(tape, z, net.hidden_activation));
        }
        activations = std::move(next);
    }

    ParisVars out;
    out.delta_k = tape.scale(activations[0], sigma_w * std::sqrt(geom.gauge_width_m()));
    const Var log_c = tape.shift(tape.scale(activations[1], scaling.c_log10_hi - scaling.c_log10_lo), scaling.c_log10_lo);
    out.coeff_c = tape.exp10(log_c);
    out.exponent_m = tape.shift(tape.scale(activations[2], scaling.m_hi - scaling.m_lo), scaling.m_lo);
    out.rate = tape.mul(out.coeff_c, tape.pow(out.delta_k, out.exponent_m));
    return out;
}

}  // namespace pinnfcg
