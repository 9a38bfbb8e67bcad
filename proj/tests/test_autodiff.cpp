#include "pinnfcg/autodiff.hpp"
#include "pinnfcg/errors.hpp"
#include "pinnfcg/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "test_support.hpp"

using namespace pinnfcg;

namespace {

// Gradient of a unary tape function at x against a central difference.
void expect_unary_gradient(const std::function<Var(Tape&, Var)>& f, double x, double tol = 1e-7) {
    Tape tape;
    Var v = tape.leaf(x);
    Var y = f(tape, v);
    const double analytic = tape.gradient(y)[v.index];
    const double h = 1e-6;
    Tape tp, tm;
    const double fp = f(tp, tp.leaf(x + h)).value();
    const double fm = f(tm, tm.leaf(x - h)).value();
    EXPECT_NEAR(analytic, (fp - fm) / (2 * h), tol * (1.0 + std::abs(analytic))) << "at x=" << x;
}

}  // namespace

TEST(Tape, SigmoidSlopeAtZero) {
    Tape t;
    Var x = t.leaf(0.0);
    Var y = t.sigmoid(x);
    EXPECT_DOUBLE_EQ(y.value(), 0.5);
    EXPECT_DOUBLE_EQ(t.gradient(y)[x.index], 0.25);
}

TEST(Tape, ProductGradient) {
    Tape t;
    Var x = t.leaf(2.0), y = t.leaf(3.0);
    Var z = x * y;
    auto g = t.gradient(z);
    EXPECT_EQ(g[x.index], 3.0);
    EXPECT_EQ(g[y.index], 2.0);
}

TEST(Tape, UnaryOpsMatchDifferences) {
    expect_unary_gradient([](Tape& t, Var x) { return t.log10(x); }, 3.7);
    expect_unary_gradient([](Tape& t, Var x) { return t.exp10(x); }, -1.3);
    expect_unary_gradient([](Tape& t, Var x) { return t.tanh(x); }, 0.4);
    expect_unary_gradient([](Tape& t, Var x) { return t.sigmoid(x); }, -2.2);
    expect_unary_gradient([](Tape& t, Var x) { return t.abs(x); }, -0.8);
    expect_unary_gradient([](Tape& t, Var x) { return t.negative_part(x); }, -0.8);
    expect_unary_gradient([](Tape& t, Var x) { return t.negative_part(x); }, 0.8);
    expect_unary_gradient([](Tape& t, Var x) { return t.floor_at(x, 1.0); }, 2.0);
    expect_unary_gradient([](Tape& t, Var x) { return t.pow(x, t.leaf(3.4)); }, 1.7);
    expect_unary_gradient([](Tape& t, Var x) { return t.pow(t.leaf(2.5), x); }, 1.7);
    expect_unary_gradient([](Tape& t, Var x) { return t.div(t.leaf(2.0), x); }, 0.6);
    expect_unary_gradient([](Tape& t, Var x) { return 3.0 - x * 2.0 + 1.0; }, 0.6);
}

TEST(Tape, SumAndAffine) {
    Tape t;
    std::vector<Var> w{t.leaf(0.5), t.leaf(-1.5), t.leaf(2.0)};
    std::vector<Var> x{t.leaf(1.0), t.leaf(2.0), t.leaf(3.0)};
    std::vector<double> xc{1.0, 2.0, 3.0};
    Var b = t.leaf(0.25);
    Var y = t.affine(w, x, b);
    Var yc = t.affine(w, xc, b);
    EXPECT_DOUBLE_EQ(y.value(), 0.5 - 3.0 + 6.0 + 0.25);
    EXPECT_DOUBLE_EQ(yc.value(), y.value());
    auto g = t.gradient(y);
    EXPECT_EQ(g[w[1].index], 2.0);
    EXPECT_EQ(g[x[2].index], 2.0);
    EXPECT_EQ(g[b.index], 1.0);

    Var s = t.sum(x);
    EXPECT_EQ(s.value(), 6.0);
    auto gs = t.gradient(s);
    EXPECT_EQ(gs[x[0].index], 1.0);
    EXPECT_EQ(gs[w[0].index], 0.0);
}

TEST(Tape, ReusedNodeAccumulates) {
    Tape t;
    Var x = t.leaf(3.0);
    Var y = x * x + x;
    EXPECT_EQ(t.gradient(y)[x.index], 7.0);
}

TEST(Tape, KinkOffsetsRecorded) {
    Tape t;
    Var x = t.leaf(-0.25);
    t.abs(x);
    t.negative_part(x);
    t.floor_at(x, -1.0);
    auto k = t.kink_offsets();
    ASSERT_EQ(k.size(), 3u);
    EXPECT_EQ(k[0], -0.25);
    EXPECT_EQ(k[1], -0.25);
    EXPECT_EQ(k[2], 0.75);
}

TEST(Tape, DomainErrors) {
    Tape t;
    Var z = t.leaf(0.0), one = t.leaf(1.0), neg = t.leaf(-2.0);
    EXPECT_THROW(t.div(one, z), DomainError);
    EXPECT_THROW(t.log10(z), DomainError);
    EXPECT_THROW(t.log10(neg), DomainError);
    EXPECT_THROW(t.pow(neg, one), DomainError);
}

TEST(Tape, ForeignVarRejected) {
    Tape a, b;
    Var x = a.leaf(1.0);
    EXPECT_THROW(b.sigmoid(x), std::logic_error);
}

TEST(Tape, ClearResets) {
    Tape t;
    t.abs(t.leaf(1.0));
    t.clear();
    EXPECT_EQ(t.size(), 0u);
    EXPECT_TRUE(t.kink_offsets().empty());
}

TEST(Tape, LossGradientsMatchDifferences) {
    using namespace pinnfcg::testing;
    for (std::uint64_t seed = 100; seed < 104; ++seed) {
        auto c = random_gradient_case(seed, 20);
        auto checks = check_gradients(c);
        for (Objective o : kAllObjectives) {
            const auto& r = checks[static_cast<std::size_t>(o)];
            EXPECT_LE(r.relative_error, 1e-5) << objective_name(o) << " seed " << seed;
            EXPECT_GT(r.compared, r.skipped) << objective_name(o) << " seed " << seed;
        }
    }
}
