#pragma once

#include <cstddef>
#include <span>

namespace pinnfcg {

/// Ordinary least-squares line y = intercept + slope * x.
struct LineFit {
    double slope{0.0};
    double intercept{0.0};
    double rss{0.0};        ///< residual sum of squares
    double tss{0.0};        ///< total sum of squares about the mean of y
    double r_squared{1.0};  ///< 1 - rss/tss, clamped to [0, 1]
    std::size_t n{0};
};

/// Throws DegenerateError when x has zero variance or fewer than two points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Incremental OLS over a growing prefix of a series. Sums are taken about
/// the first sample so long series do not lose precision.
class RunningLineFit {
public:
    void add(double x, double y);

    std::size_t count() const noexcept { return n_; }

    /// Residual sum of squares of the best line through the points added so
    /// far. Zero when fewer than three points or x has no spread.
    double rss() const noexcept;

private:
    std::size_t n_{0};
    double x0_{0.0};
    double y0_{0.0};
    double sx_{0.0};
    double sy_{0.0};
    double sxx_{0.0};
    double sxy_{0.0};
    double syy_{0.0};
};

}  // namespace pinnfcg
