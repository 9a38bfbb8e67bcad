#include "pinnfcg/linear_fit.hpp"

#include "pinnfcg/errors.hpp"

#include <algorithm>

namespace pinnfcg {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DomainError("fit_line: x and y differ in length");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        throw DegenerateError("fit_line: need at least two points");
    }

    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw DegenerateError("fit_line: zero variance in x");
    }

    LineFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        rss += r * r;
    }
    fit.rss = rss;
    fit.tss = syy;
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - rss / syy, 0.0, 1.0) : 1.0;
    return fit;
}

void RunningLineFit::add(double x, double y) {
    if (n_ == 0) {
        x0_ = x;
        y0_ = y;
    }
    const double dx = x - x0_;
    const double dy = y - y0_;
    ++n_;
    sx_ += dx;
    sy_ += dy;
    sxx_ += dx * dx;
    sxy_ += dx * dy;
    syy_ += dy * dy;
}

double RunningLineFit::rss() const noexcept {
    if (n_ < 3) {
        return 0.0;
    }
    const double n = static_cast<double>(n_);
    const double vx = sxx_ - sx_ * sx_ / n;
    const double vxy = sxy_ - sx_ * sy_ / n;
    const double vy = syy_ - sy_ * sy_ / n;
    if (!(vx > 0.0)) {
        return std::max(vy, 0.0);
    }
    return std::max(vy - vxy * vxy / vx, 0.0);
}

}  // namespace pinnfcg
