#include "pinnfcg/errors.hpp"
#include "pinnfcg/random.hpp"
#include "pinnfcg/signal_prep.hpp"
#include "pinnfcg/synthetic_data.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pinnfcg;

namespace {

std::vector<double> line_with_noise(std::size_t n, double sigma, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = 150.0 - 0.001 * static_cast<double>(i) + sigma * rng.normal();
    }
    return f;
}

CouponDataset coupon_from(const std::vector<double>& f) {
    CouponDataset d;
    d.id = "c";
    d.sqrt_area_um = 100.0;
    d.stress_amplitude_mpa = 300.0;
    d.hardness_hv = 220.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        d.cycles.push_back(1000.0 * static_cast<double>(i + 1));
    }
    d.frequency_hz = f;
    return d;
}

}  // namespace

TEST(MovingAverage, WindowOneIsIdentity) {
    std::vector<double> v{3, 1, 4, 1, 5, 9};
    EXPECT_EQ(moving_average(v, 1), v);
}

TEST(MovingAverage, ShrunkenEdges) {
    std::vector<double> v{1, 2, 3, 4, 5};
    auto out = moving_average(v, 3);
    std::vector<double> expect{1.5, 2, 3, 4, 4.5};
    ASSERT_EQ(out.size(), expect.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        EXPECT_DOUBLE_EQ(out[i], expect[i]);
    }
}

TEST(MovingAverage, ConstantUnchanged) {
    std::vector<double> v(20, 149.25);
    for (double x : moving_average(v, 5)) {
        EXPECT_DOUBLE_EQ(x, 149.25);
    }
}

TEST(MovingAverage, RejectsBadWindow) {
    std::vector<double> v{1, 2, 3};
    EXPECT_THROW(moving_average(v, 2), ConfigError);
    EXPECT_THROW(moving_average(v, 0), ConfigError);
    EXPECT_THROW(moving_average(v, 5), ConfigError);
}

TEST(DetectTransition, PerfectLineHasNoTransition) {
    std::vector<double> f(400);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = 150.0 - 0.001 * static_cast<double>(i);
    }
    EXPECT_FALSE(detect_transition(f, {5, 10, 2.0}).has_value());
    EXPECT_FALSE(detect_transition(f, {}).has_value());
}

TEST(DetectTransition, PiecewiseBreakpoint) {
    std::vector<double> f;
    for (int i = 0; i < 200; ++i) {
        f.push_back(150.0 - 0.001 * i);
    }
    const double f200 = 150.0 - 0.2;
    for (int k = 1; k <= 100; ++k) {
        f.push_back(f200 - 0.001 * k - 1e-4 * k * k);
    }
    auto w = detect_transition(f, {5, 10, 2.0});
    ASSERT_TRUE(w.has_value());
    EXPECT_NEAR(static_cast<double>(*w), 200.0, 5.0);
}

TEST(DetectTransition, PureNoiseRarelyTriggers) {
    int quiet = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto f = line_with_noise(500, 0.01, seed);
        quiet += detect_transition(f, {5, 50, 3.0}).has_value() ? 0 : 1;
    }
    EXPECT_GE(quiet, 95);
}

TEST(DetectTransition, InvariantToConstantOffset) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto f = line_with_noise(400, 0.005, seed);
        for (std::size_t i = 250; i < f.size(); ++i) {
            f[i] -= 2e-5 * std::pow(static_cast<double>(i - 250), 2.0);
        }
        auto shifted = f;
        for (double& x : shifted) {
            x += 37.5;
        }
        EXPECT_EQ(detect_transition(f, {}), detect_transition(shifted, {}));
    }
}

TEST(DetectTransition, Errors) {
    std::vector<double> f(20, 1.0);
    EXPECT_THROW(detect_transition(f, {5, 50, 3.0}), DomainError);
    EXPECT_THROW(detect_transition(f, {5, 2, 3.0}), ConfigError);
    EXPECT_THROW(detect_transition(f, {5, 10, 1.0}), ConfigError);
}

TEST(TransformFrequency, HandExample) {
    std::vector<double> f{100, 99.5, 98.5, 98};
    auto d = transform_frequency(f);
    std::vector<double> expect{0, 0.25, 0.75, 1.0};
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_DOUBLE_EQ(d[i], expect[i]);
    }
}

TEST(TransformFrequency, TwoValues) {
    std::vector<double> f{7.25, -3.0};
    EXPECT_EQ(transform_frequency(f), (std::vector<double>{0.0, 1.0}));
}

TEST(TransformFrequency, DecreasingBecomesIncreasing) {
    Rng rng(4);
    std::vector<double> f{150.0};
    for (int i = 0; i < 50; ++i) {
        f.push_back(f.back() - rng.uniform(1e-4, 0.1));
    }
    auto d = transform_frequency(f);
    for (std::size_t i = 1; i < d.size(); ++i) {
        EXPECT_GT(d[i], d[i - 1]);
    }
}

TEST(TransformFrequency, AffineInvariant) {
    Rng rng(8);
    std::vector<double> f;
    for (int i = 0; i < 60; ++i) {
        f.push_back(rng.uniform(140.0, 150.0));
    }
    auto base = transform_frequency(f);
    for (auto [p, q] : {std::pair{2.0, 0.0}, std::pair{0.5, 13.0}, std::pair{3.0, -400.0}}) {
        std::vector<double> g;
        for (double x : f) {
            g.push_back(p * x + q);
        }
        auto d = transform_frequency(g);
        for (std::size_t i = 0; i < d.size(); ++i) {
            EXPECT_NEAR(d[i], base[i], 1e-12);
        }
    }
}

TEST(TransformFrequency, ConstantIsDegenerate) {
    std::vector<double> f(5, 3.0);
    EXPECT_THROW(transform_frequency(f), DegenerateError);
}

TEST(Prepare, ColumnsAndBookkeeping) {
    GeneratorConfig g;
    g.noise_sigma_hz = 0.0;
    auto coupon = generate(g, {});
    auto out = prepare(coupon.dataset, coupon.dataset.material(), {});
    ASSERT_TRUE(std::holds_alternative<PreparedDataset>(out));
    const auto& p = std::get<PreparedDataset>(out);
    EXPECT_EQ(p.size(), coupon.dataset.cycles.size() - p.transition_index);
    EXPECT_EQ(p.cycles_retained.size(), p.size());
    EXPECT_EQ(p.features.front()[2], 0.0);
    EXPECT_EQ(p.features.back()[2], 1.0);
    for (const auto& row : p.features) {
        EXPECT_EQ(row[0], p.features.front()[0]);
        EXPECT_EQ(row[1], p.features.front()[1]);
        EXPECT_GE(row[2], 0.0);
        EXPECT_LE(row[2], 1.0);
        EXPECT_GE(row[3], 0.0);
        EXPECT_LE(row[3], 1.0);
    }
    EXPECT_DOUBLE_EQ(p.features.front()[0], 2.0);
    EXPECT_NEAR(p.sigma_w, 225.66, 0.02);
    EXPECT_NEAR(p.delta_k_th, 5.208, 1e-3);
}

TEST(Prepare, RetainedRegionStartsNearInitiation) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GeneratorConfig g;
        g.seed = seed;
        auto coupon = generate(g, {});
        PrepConfig cfg;
        auto out = prepare(coupon.dataset, coupon.dataset.material(), cfg);
        ASSERT_TRUE(std::holds_alternative<PreparedDataset>(out));
        const auto& p = std::get<PreparedDataset>(out);
        EXPECT_GE(static_cast<double>(p.transition_index),
                  static_cast<double>(coupon.truth.crack_initiation_index) - cfg.smoothing_window);
    }
}

TEST(Prepare, LinearRecordIsRunout) {
    auto coupon = coupon_from(line_with_noise(300, 0.0, 0));
    auto out = prepare(coupon, coupon.material(), {});
    ASSERT_TRUE(std::holds_alternative<Runout>(out));
    EXPECT_EQ(std::get<Runout>(out).raw_rows, 300u);
}

TEST(Prepare, Deterministic) {
    GeneratorConfig g;
    g.seed = 3;
    auto coupon = generate(g, {});
    auto a = std::get<PreparedDataset>(prepare(coupon.dataset, coupon.dataset.material(), {}));
    auto b = std::get<PreparedDataset>(prepare(coupon.dataset, coupon.dataset.material(), {}));
    EXPECT_EQ(a.features, b.features);
    EXPECT_EQ(a.cycles_retained, b.cycles_retained);
}

TEST(Prepare, RejectsInvalidCoupon) {
    auto coupon = coupon_from(line_with_noise(100, 0.0, 0));
    coupon.cycles[10] = coupon.cycles[9];
    EXPECT_THROW(prepare(coupon, coupon.material(), {}), DomainError);
    coupon = coupon_from(line_with_noise(100, 0.0, 0));
    coupon.frequency_hz.pop_back();
    EXPECT_THROW(prepare(coupon, coupon.material(), {}), DomainError);
}
