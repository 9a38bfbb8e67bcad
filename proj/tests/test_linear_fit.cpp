#include "pinnfcg/errors.hpp"
#include "pinnfcg/linear_fit.hpp"
#include "pinnfcg/random.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace pinnfcg;

TEST(LinearFit, ExactLine) {
    std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
    auto f = fit_line(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.rss, 0.0, 1e-24);
    EXPECT_DOUBLE_EQ(f.r_squared, 1.0);
}

TEST(LinearFit, HandResidual) {
    // (0,0),(1,1),(2,1): slope 1/2, intercept 1/6, RSS 1/6
    std::vector<double> x{0, 1, 2}, y{0, 1, 1};
    auto f = fit_line(x, y);
    EXPECT_NEAR(f.slope, 0.5, 1e-15);
    EXPECT_NEAR(f.intercept, 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(f.rss, 1.0 / 6.0, 1e-15);
}

TEST(LinearFit, DegenerateInputsThrow) {
    std::vector<double> one{1.0};
    EXPECT_THROW(fit_line(one, one), DegenerateError);
    std::vector<double> x{2, 2, 2}, y{1, 2, 3};
    EXPECT_THROW(fit_line(x, y), DegenerateError);
    std::vector<double> shorter{1, 2};
    EXPECT_THROW(fit_line(x, shorter), DomainError);
}

TEST(LinearFit, RunningMatchesBatch) {
    Rng rng(3);
    RunningLineFit running;
    std::vector<double> x, y;
    for (int i = 0; i < 200; ++i) {
        x.push_back(1e6 + 1000.0 * i);
        y.push_back(150.0 - 1e-6 * x.back() + 0.01 * rng.normal());
        running.add(x.back(), y.back());
        if (i >= 2) {
            EXPECT_NEAR(running.rss(), fit_line(x, y).rss, 1e-9 * (1.0 + fit_line(x, y).rss));
        }
    }
}

TEST(LinearFit, RunningZeroBelowThreePoints) {
    RunningLineFit f;
    EXPECT_EQ(f.rss(), 0.0);
    f.add(0, 1);
    f.add(1, 5);
    EXPECT_EQ(f.rss(), 0.0);
}
