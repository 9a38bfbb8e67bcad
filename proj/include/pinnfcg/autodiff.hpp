#pragma once

// Scalar reverse-mode automatic differentiation.
//
// A Tape is an append-only list of nodes. Each node stores its forward value
// and, for every parent, the local partial derivative d(node)/d(parent).
// Parents always precede their children, so one reverse sweep yields the
// adjoints of every node with respect to a chosen output.

#include <cstdint>
#include <span>
#include <vector>

namespace pinnfcg {

class Tape;

/// Handle to a node on a tape. Cheap to copy; valid while the tape is alive
/// and has not been cleared.
struct Var {
    Tape* tape{nullptr};
    std::uint32_t index{0};

    double value() const;
};

enum class OpKind : std::uint8_t {
    Leaf,
    Add,
    Sub,
    Mul,
    Div,
    Scale,
    Shift,
    Pow,
    Exp10,
    Log10,
    Abs,
    NegativePart,
    Floor,
    Sigmoid,
    Tanh,
    Sum,
    Affine,
};

class Tape {
public:
    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    /// Drops all nodes, keeping allocated storage.
    void clear();
    void reserve(std::size_t nodes, std::size_t edges);

    std::size_t size() const noexcept { return values_.size(); }
    double value(Var v) const { return values_[v.index]; }
    OpKind kind(Var v) const { return kinds_[v.index]; }
    std::span<const std::uint32_t> parents(Var v) const;

    Var leaf(double value);

    Var add(Var a, Var b);
    Var sub(Var a, Var b);
    Var mul(Var a, Var b);
    Var div(Var a, Var b);
    Var scale(Var a, double factor);
    Var shift(Var a, double offset);
    /// base^exponent for base > 0.
    Var pow(Var base, Var exponent);
    Var exp10(Var a);
    Var log10(Var a);
    /// |a|; subgradient 0 at a = 0.
    Var abs(Var a);
    /// max(0, -a): gate derivative -1 for a < 0, 0 otherwise.
    Var negative_part(Var a);
    /// max(a, floor): derivative 1 above the floor, 0 on it.
    Var floor_at(Var a, double floor);
    Var sigmoid(Var a);
    Var tanh(Var a);
    Var sum(std::span<const Var> terms);
    /// bias + sum_i weights[i] * inputs[i]
    Var affine(std::span<const Var> weights, std::span<const Var> inputs, Var bias);
    /// bias + sum_i weights[i] * inputs[i] with constant inputs.
    Var affine(std::span<const Var> weights, std::span<const double> inputs, Var bias);

    /// Adjoint of every node with respect to `output`.
    std::vector<double> gradient(Var output) const;

    /// Signed distance of each piecewise node's argument from its kink, in
    /// tape order. The sign identifies the active branch.
    std::vector<double> kink_offsets() const;

private:
    Var push(OpKind kind, double value);
    void edge(Var parent, double partial);
    void check(Var v) const;

    std::vector<double> values_;
    std::vector<OpKind> kinds_;
    std::vector<std::uint32_t> edge_begin_;
    std::vector<std::uint32_t> edge_parent_;
    std::vector<double> edge_partial_;
    std::vector<double> kink_offsets_;
};

inline double Var::value() const { return tape->value(*this); }

inline Var operator+(Var a, Var b) { return a.tape->add(a, b); }
inline Var operator-(Var a, Var b) { return a.tape->sub(a, b); }
inline Var operator*(Var a, Var b) { return a.tape->mul(a, b); }
inline Var operator/(Var a, Var b) { return a.tape->div(a, b); }
inline Var operator*(Var a, double c) { return a.tape->scale(a, c); }
inline Var operator*(double c, Var a) { return a.tape->scale(a, c); }
inline Var operator/(Var a, double c) { return a.tape->scale(a, 1.0 / c); }
inline Var operator+(Var a, double c) { return a.tape->shift(a, c); }
inline Var operator+(double c, Var a) { return a.tape->shift(a, c); }
inline Var operator-(Var a, double c) { return a.tape->shift(a, -c); }
inline Var operator-(double c, Var a) { return a.tape->shift(a.tape->scale(a, -1.0), c); }

}  // namespace pinnfcg
