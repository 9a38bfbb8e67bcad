#include "pinnfcg/physics_loss.hpp"

#include "pinnfcg/errors.hpp"

#include <cmath>
#include <tuple>

namespace pinnfcg {

void LossWeights::validate() const {
    const double w[] = {w_ic, w_bc, w_mon_a, w_mon_k, w_rss};
    bool any_positive = false;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ConfigError("loss weights must be finite and non-negative");
        }
        any_positive = any_positive || v > 0.0;
    }
    if (!any_positive) {
        throw ConfigError("at least one loss weight must be positive");
    }
}

Var loss_ic(Var delta_k_first, double delta_k_th) {
    Tape& tape = *delta_k_first.tape;
    return tape.abs(tape.shift(delta_k_first, -delta_k_th));
}

Var loss_bc(std::span<const Var> rates, std::span<const double> cycles, const GeometryConfig& geom) {
    if (rates.size() != cycles.size() || rates.size() < 2) {
        throw DomainError("loss_bc: need aligned rates and cycles with at least two rows");
    }
    Tape& tape = *rates.front().tape;
    std::vector<Var> growth;
    growth.reserve(rates.size() - 1);
    for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
        const double dn = cycles[i + 1] - cycles[i];
        if (!(dn > 0.0)) {
            throw DomainError("loss_bc: cycles must be strictly increasing");
        }
        growth.push_back(tape.scale(rates[i], dn));
    }
    const Var integrated = tape.floor_at(tape.sum(growth), kIntegratedCrackFloorMm);
    return tape.abs(tape.shift(tape.scale(tape.log10(integrated), -1.0), std::log10(geom.gauge_width_mm)));
}

namespace {

Var negative_steps(std::span<const Var> series) {
    if (series.size() < 2) {
        throw DomainError("monotonicity loss: need at least two rows");
    }
    Tape& tape = *series.front().tape;
    std::vector<Var> parts;
    parts.reserve(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        parts.push_back(tape.negative_part(tape.sub(series[i + 1], series[i])));
    }
    return tape.sum(parts);
}

}  // namespace

Var loss_mon_a(std::span<const Var> rates) { return negative_steps(rates); }

Var loss_mon_k(std::span<const Var> delta_ks) { return negative_steps(delta_ks); }

Var loss_rss(std::span<const Var> delta_ks, std::span<const Var> rates) {
    if (delta_ks.size() != rates.size() || delta_ks.size() < 3) {
        throw DomainError("loss_rss: need aligned series with at least three rows");
    }
    Tape& tape = *delta_ks.front().tape;
    const std::size_t n = delta_ks.size();
    const double inv_n = 1.0 / static_cast<double>(n);

    std::vector<Var> x;
    std::vector<Var> y;
    x.reserve(n);
    y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        x.push_back(tape.log10(delta_ks[i]));
        y.push_back(tape.log10(rates[i]));
    }
    const Var x_mean = tape.scale(tape.sum(x), inv_n);
    const Var y_mean = tape.scale(tape.sum(y), inv_n);

    std::vector<Var> dx;
    std::vector<Var> dy;
    std::vector<Var> dxx;
    std::vector<Var> dxy;
    dx.reserve(n);
    dy.reserve(n);
    dxx.reserve(n);
    dxy.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        dx.push_back(tape.sub(x[i], x_mean));
        dy.push_back(tape.sub(y[i], y_mean));
        dxx.push_back(tape.mul(dx[i], dx[i]));
        dxy.push_back(tape.mul(dx[i], dy[i]));
    }
    const Var sxx = tape.floor_at(tape.sum(dxx), kRegressionVarianceFloor);
    const Var slope = tape.div(tape.sum(dxy), sxx);

    // residual about the centered line: dy - slope * dx
    std::vector<Var> squares;
    squares.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Var r = tape.sub(dy[i], tape.mul(slope, dx[i]));
        squares.push_back(tape.mul(r, r));
    }
    return tape.sum(squares);
}

std::pair<Var, LossBreakdown> total_loss(const LossTerms& terms, const LossWeights& weights) {
    Tape& tape = *terms.ic.tape;
    const Var weighted[] = {
        tape.scale(terms.ic, weights.w_ic),       tape.scale(terms.bc, weights.w_bc),
        tape.scale(terms.mon_a, weights.w_mon_a), tape.scale(terms.mon_k, weights.w_mon_k),
        tape.scale(terms.rss, weights.w_rss),
    };
    const Var total = tape.sum(weighted);

    LossBreakdown b;
    b.l_ic = terms.ic.value();
    b.l_bc = terms.bc.value();
    b.l_mon_a = terms.mon_a.value();
    b.l_mon_k = terms.mon_k.value();
    b.l_rss = terms.rss.value();
    b.total = total.value();
    b.weights = weights;
    return {total, b};
}

LossEvaluation evaluate_loss(Tape& tape,
                             const Network& net,
                             std::span<const Var> params,
                             const PreparedDataset& data,
                             const OutputScaling& scaling,
                             const GeometryConfig& geom,
                             const LossWeights& weights) {
    LossEvaluation eval;
    const std::size_t n = data.size();
    eval.rows.reserve(n);
    std::vector<Var> delta_ks;
    std::vector<Var> rates;
    delta_ks.reserve(n);
    rates.reserve(n);
    for (const FeatureRow& row : data.features) {
        const ParisVars out = forward(tape, net, params, row, scaling, data.sigma_w, geom);
        eval.rows.push_back(out);
        delta_ks.push_back(out.delta_k);
        rates.push_back(out.rate);
    }

    eval.terms.ic = loss_ic(delta_ks.front(), data.delta_k_th);
    eval.terms.bc = loss_bc(rates, data.cycles_retained, geom);
    eval.terms.mon_a = loss_mon_a(rates);
    eval.terms.mon_k = loss_mon_k(delta_ks);
    eval.terms.rss = loss_rss(delta_ks, rates);
    std::tie(eval.total, eval.breakdown) = total_loss(eval.terms, weights);
    return eval;
}

}  // namespace pinnfcg
