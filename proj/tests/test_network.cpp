#include "pinnfcg/errors.hpp"
#include "pinnfcg/network.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pinnfcg;

namespace {

PreparedDataset two_rows() {
    PreparedDataset d;
    d.source_id = "n";
    d.sigma_w = 225.66;
    d.delta_k_th = 5.2;
    d.features = {{2.0, 2.4, 0.0, 0.0}, {2.0, 2.4, 1.0, 1.0}};
    d.cycles_retained = {1e5, 2e5};
    return d;
}

void zero_last_layer(Network& net) {
    auto& last = net.layers.back();
    std::fill(last.weights.begin(), last.weights.end(), 0.0);
    std::fill(last.biases.begin(), last.biases.end(), 0.0);
}

}  // namespace

TEST(Network, ParameterCount) {
    auto net = init_network({4, 16, 16, 3}, 0);
    EXPECT_EQ(net.parameter_count(), 403u);
    EXPECT_EQ(net.flatten().size(), 403u);
}

TEST(Network, SeedDeterminesParameters) {
    EXPECT_EQ(init_network({4, 16, 16, 3}, 7).flatten(), init_network({4, 16, 16, 3}, 7).flatten());
    EXPECT_NE(init_network({4, 16, 16, 3}, 7).flatten(), init_network({4, 16, 16, 3}, 8).flatten());
}

TEST(Network, InitScaleAndZeroBias) {
    auto net = init_network({4, 16, 16, 3}, 3);
    for (const auto& layer : net.layers) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.inputs));
        for (double w : layer.weights) {
            EXPECT_LE(std::abs(w), bound);
        }
        for (double b : layer.biases) {
            EXPECT_EQ(b, 0.0);
        }
    }
}

TEST(Network, AssignRoundTrip) {
    auto net = init_network({4, 8, 3}, 1);
    auto p = net.flatten();
    for (double& x : p) {
        x += 0.5;
    }
    net.assign(p);
    EXPECT_EQ(net.flatten(), p);
    std::vector<double> wrong(p.size() + 1);
    EXPECT_THROW(net.assign(wrong), std::invalid_argument);
}

TEST(Network, RejectsBadShapes) {
    EXPECT_THROW(init_network({3, 16, 3}, 0), ConfigError);
    EXPECT_THROW(init_network({4, 16, 2}, 0), ConfigError);
    EXPECT_THROW(init_network({4, 0, 3}, 0), ConfigError);
}

TEST(Network, ActivationNames) {
    for (auto a : {Activation::Tanh, Activation::Sigmoid, Activation::Relu}) {
        EXPECT_EQ(activation_from_string(to_string(a)), a);
    }
    EXPECT_THROW(activation_from_string("swish"), ConfigError);
}

TEST(Forward, MidpointOutputs) {
    auto net = init_network({4, 16, 16, 3}, 0);
    zero_last_layer(net);
    GeometryConfig geom;
    OutputScaling scaling;
    Tape tape;
    auto params = bind_parameters(tape, net);
    auto d = two_rows();
    auto out = forward(tape, net, params, d.features[0], scaling, d.sigma_w, geom);
    EXPECT_NEAR(out.coeff_c.value(), 1e-11, 1e-24);
    EXPECT_NEAR(out.exponent_m.value(), 5.5, 1e-15);
    EXPECT_NEAR(out.delta_k.value(), 0.5 * d.sigma_w * std::sqrt(geom.gauge_width_m()), 1e-12);
    EXPECT_NEAR(out.rate.value(), paris_rate({1e-11, 5.5}, out.delta_k.value()), 1e-25);
}

TEST(Forward, SaturatedDeltaKApproachesScale) {
    auto net = init_network({4, 16, 16, 3}, 0);
    zero_last_layer(net);
    net.layers.back().biases[0] = 40.0;
    GeometryConfig geom;
    Tape tape;
    auto params = bind_parameters(tape, net);
    auto d = two_rows();
    auto out = forward(tape, net, params, d.features[1], {}, d.sigma_w, geom);
    EXPECT_NEAR(nondim_sif(out.delta_k.value(), d.sigma_w, geom), 1.0, 1e-12);
}

TEST(Forward, OutputsInsideOpenRanges) {
    GeometryConfig geom;
    OutputScaling s;
    auto d = two_rows();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto net = init_network({4, 16, 16, 3}, seed);
        Tape tape;
        auto params = bind_parameters(tape, net);
        for (const auto& row : d.features) {
            auto out = forward(tape, net, params, row, s, d.sigma_w, geom);
            EXPECT_GT(out.delta_k.value(), 0.0);
            EXPECT_LT(out.delta_k.value(), d.sigma_w * std::sqrt(geom.gauge_width_m()));
            EXPECT_GT(out.coeff_c.value(), std::pow(10.0, s.c_log10_lo));
            EXPECT_LT(out.coeff_c.value(), std::pow(10.0, s.c_log10_hi));
            EXPECT_GT(out.exponent_m.value(), s.m_lo);
            EXPECT_LT(out.exponent_m.value(), s.m_hi);
        }
    }
}

TEST(Forward, RowsGiveDistinctOutputs) {
    auto net = init_network({4, 16, 16, 3}, 2);
    Tape tape;
    auto params = bind_parameters(tape, net);
    auto d = two_rows();
    auto a = forward(tape, net, params, d.features[0], {}, d.sigma_w, {});
    auto b = forward(tape, net, params, d.features[1], {}, d.sigma_w, {});
    EXPECT_NE(a.delta_k.value(), b.delta_k.value());
    EXPECT_NE(a.exponent_m.value(), b.exponent_m.value());
}

TEST(Forward, BitReproducible) {
    auto net = init_network({4, 16, 16, 3}, 5);
    auto d = two_rows();
    auto run = [&] {
        Tape tape;
        auto params = bind_parameters(tape, net);
        auto out = forward(tape, net, params, d.features[1], {}, d.sigma_w, {});
        auto g = tape.gradient(out.rate);
        g.push_back(out.rate.value());
        return g;
    };
    EXPECT_EQ(run(), run());
}

TEST(OutputScaling, Validation) {
    OutputScaling s;
    EXPECT_NO_THROW(s.validate());
    s.m_lo = 11.0;
    EXPECT_THROW(s.validate(), ConfigError);
}
