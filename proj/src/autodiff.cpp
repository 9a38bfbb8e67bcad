#include "pinnfcg/autodiff.hpp"

#include "pinnfcg/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pinnfcg {

namespace {

constexpr double kLn10 = std::numbers::ln10;

}  // namespace

void Tape::clear() {
    values_.clear();
    kinds_.clear();
    edge_begin_.clear();
    edge_parent_.clear();
    edge_partial_.clear();
    kink_offsets_.clear();
}

void Tape::reserve(std::size_t nodes, std::size_t edges) {
    values_.reserve(nodes);
    kinds_.reserve(nodes);
    edge_begin_.reserve(nodes + 1);
    edge_parent_.reserve(edges);
    edge_partial_.reserve(edges);
}

std::span<const std::uint32_t> Tape::parents(Var v) const {
    check(v);
    const std::uint32_t begin = edge_begin_[v.index];
    const std::uint32_t end =
        v.index + 1 < edge_begin_.size() ? edge_begin_[v.index + 1] : static_cast<std::uint32_t>(edge_parent_.size());
    return {edge_parent_.data() + begin, end - begin};
}

void Tape::check(Var v) const {
    if (v.tape != this || v.index >= values_.size()) {
        throw std::logic_error("Var does not belong to this tape");
    }
}

Var Tape::push(OpKind kind, double value) {
    const auto index = static_cast<std::uint32_t>(values_.size());
    values_.push_back(value);
    kinds_.push_back(kind);
    edge_begin_.push_back(static_cast<std::uint32_t>(edge_parent_.size()));
    return Var{this, index};
}

void Tape::edge(Var parent, double partial) {
    edge_parent_.push_back(parent.index);
    edge_partial_.push_back(partial);
}

Var Tape::leaf(double value) { return push(OpKind::Leaf, value); }

Var Tape::add(Var a, Var b) {
    check(a);
    check(b);
    Var out = push(OpKind::Add, values_[a.index] + values_[b.index]);
    edge(a, 1.0);
    edge(b, 1.0);
    return out;
}

Var Tape::sub(Var a, Var b) {
    check(a);
    check(b);
    Var out = push(OpKind::Sub, values_[a.index] - values_[b.index]);
    edge(a, 1.0);
    edge(b, -1.0);
    return out;
}

Var Tape::mul(Var a, Var b) {
    check(a);
    check(b);
    const double va = values_[a.index];
    const double vb = values_[b.index];
    Var out = push(OpKind::Mul, va * vb);
    edge(a, vb);
    edge(b, va);
    return out;
}

Var Tape::div(Var a, Var b) {
    check(a);
    check(b);
    const double va = values_[a.index];
    const double vb = values_[b.index];
    if (vb == 0.0) {
        throw DomainError("autodiff: division by zero");
    }
    Var out = push(OpKind::Div, va / vb);
    edge(a, 1.0 / vb);
    edge(b, -va / (vb * vb));
    return out;
}

Var Tape::scale(Var a, double factor) {
    check(a);
    Var out = push(OpKind::Scale, values_[a.index] * factor);
    edge(a, factor);
    return out;
}

Var Tape::shift(Var a, double offset) {
    check(a);
    Var out = push(OpKind::Shift, values_[a.index] + offset);
    edge(a, 1.0);
    return out;
}

Var Tape::pow(Var base, Var exponent) {
    check(base);
    check(exponent);
    const double b = values_[base.index];
    const double e = values_[exponent.index];
    if (!(b > 0.0)) {
        throw DomainError("autodiff: pow requires a positive base, got " + std::to_string(b));
    }
    const double y = std::pow(b, e);
    Var out = push(OpKind::Pow, y);
    edge(base, e * y / b);
    edge(exponent, y * std::log(b));
    return out;
}

Var Tape::exp10(Var a) {
    check(a);
    const double y = std::pow(10.0, values_[a.index]);
    Var out = push(OpKind::Exp10, y);
    edge(a, kLn10 * y);
    return out;
}

Var Tape::log10(Var a) {
    check(a);
    const double x = values_[a.index];
    if (!(x > 0.0)) {
        throw DomainError("autodiff: log10 of non-positive value " + std::to_string(x));
    }
    Var out = push(OpKind::Log10, std::log10(x));
    edge(a, 1.0 / (x * kLn10));
    return out;
}

Var Tape::abs(Var a) {
    check(a);
    const double x = values_[a.index];
    Var out = push(OpKind::Abs, std::fabs(x));
    edge(a, x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0));
    kink_offsets_.push_back(x);
    return out;
}

Var Tape::negative_part(Var a) {
    check(a);
    const double x = values_[a.index];
    Var out = push(OpKind::NegativePart, x < 0.0 ? -x : 0.0);
    edge(a, x < 0.0 ? -1.0 : 0.0);
    kink_offsets_.push_back(x);
    return out;
}

Var Tape::floor_at(Var a, double floor) {
    check(a);
    const double x = values_[a.index];
    const bool above = x > floor;
    Var out = push(OpKind::Floor, above ? x : floor);
    edge(a, above ? 1.0 : 0.0);
    kink_offsets_.push_back(x - floor);
    return out;
}

Var Tape::sigmoid(Var a) {
    check(a);
    const double x = values_[a.index];
    const double y = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    Var out = push(OpKind::Sigmoid, y);
    edge(a, y * (1.0 - y));
    return out;
}

Var Tape::tanh(Var a) {
    check(a);
    const double y = std::tanh(values_[a.index]);
    Var out = push(OpKind::Tanh, y);
    edge(a, 1.0 - y * y);
    return out;
}

Var Tape::sum(std::span<const Var> terms) {
    double total = 0.0;
    for (const Var& t : terms) {
        check(t);
        total += values_[t.index];
    }
    Var out = push(OpKind::Sum, total);
    for (const Var& t : terms) {
        edge(t, 1.0);
    }
    return out;
}

Var Tape::affine(std::span<const Var> weights, std::span<const Var> inputs, Var bias) {
    if (weights.size() != inputs.size()) {
        throw std::logic_error("affine: weights and inputs differ in length");
    }
    check(bias);
    double total = values_[bias.index];
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += values_[weights[i].index] * values_[inputs[i].index];
    }
    Var out = push(OpKind::Affine, total);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        edge(weights[i], values_[inputs[i].index]);
        edge(inputs[i], values_[weights[i].index]);
    }
    edge(bias, 1.0);
    return out;
}

Var Tape::affine(std::span<const Var> weights, std::span<const double> inputs, Var bias) {
    if (weights.size() != inputs.size()) {
        throw std::logic_error("affine: weights and inputs differ in length");
    }
    check(bias);
    double total = values_[bias.index];
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += values_[weights[i].index] * inputs[i];
    }
    Var out = push(OpKind::Affine, total);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        edge(weights[i], inputs[i]);
    }
    edge(bias, 1.0);
    return out;
}

std::vector<double> Tape::gradient(Var output) const {
    check(output);
    std::vector<double> adjoint(values_.size(), 0.0);
    adjoint[output.index] = 1.0;
    for (std::size_t k = output.index + 1; k-- > 0;) {
        const double a = adjoint[k];
        if (a == 0.0) {
            continue;
        }
        const std::uint32_t begin = edge_begin_[k];
        const std::uint32_t end =
            k + 1 < edge_begin_.size() ? edge_begin_[k + 1] : static_cast<std::uint32_t>(edge_parent_.size());
        for (std::uint32_t e = begin; e < end; ++e) {
            adjoint[edge_parent_[e]] += edge_partial_[e] * a;
        }
    }
    return adjoint;
}

std::vector<double> Tape::kink_offsets() const { return kink_offsets_; }

}  // namespace pinnfcg
