#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "polyuni/automorphism.hpp"
#include "polyuni/geometry.hpp"

namespace polyuni {

struct Node;

/// Immutable expression tree for an element of the closed unit ball of
/// H^inf(D^n). Every constructor enforces the ball constraints of its node,
/// so every tree built through this interface has sup norm at most one.
class HoloFunction {
public:
    static HoloFunction constant(std::size_t n, Complex c);
    static HoloFunction coordinate(std::size_t n, std::size_t index);
    static HoloFunction blaschke(std::size_t n, MobiusFactor f, std::size_t coordinate);
    static HoloFunction product(std::vector<HoloFunction> children);
    static HoloFunction composed(PolydiskAutomorphism inner, HoloFunction outer);
    static HoloFunction power(HoloFunction base, unsigned exponent);

    std::size_t dimension() const noexcept { return dimension_; }
    const Node& node() const noexcept { return *node_; }

    template <typename T>
    const T* as() const noexcept;

    Complex operator()(std::span<const Complex> z) const;
    Complex operator()(const CPoint& z) const { return (*this)(z.view()); }
    Complex operator()(const TorusPoint& z) const { return (*this)(z.view()); }

    /// Structural equality.
    bool operator==(const HoloFunction& other) const;

private:
    HoloFunction(std::size_t n, std::shared_ptr<const Node> node) : dimension_(n), node_(std::move(node)) {}

    std::size_t dimension_;
    std::shared_ptr<const Node> node_;
};

namespace node {

struct Constant {
    Complex value;
};
/// 0-based coordinate index.
struct Coordinate {
    std::size_t index;
};
struct Blaschke {
    MobiusFactor factor;
    std::size_t coordinate;
};
struct Product {
    std::vector<HoloFunction> children;
};
/// outer o inner
struct Composed {
    PolydiskAutomorphism inner;
    HoloFunction outer;
};
struct Power {
    HoloFunction base;
    unsigned exponent;
};

}  // namespace node

struct Node {
    std::variant<node::Constant, node::Coordinate, node::Blaschke, node::Product, node::Composed, node::Power> v;
};

template <typename T>
const T* HoloFunction::as() const noexcept
{
    return std::get_if<T>(&node_->v);
}

HoloFunction operator*(const HoloFunction& a, const HoloFunction& b);

/// True when the tree is built only from unimodular constants, coordinates,
/// Blaschke factors, products, powers and automorphic compositions, i.e. it
/// is inner and continuous on the closed polydisk.
bool is_inner_tree(const HoloFunction& f);

/// Set of coordinates (0-based) that f actually depends on.
std::vector<std::size_t> dependent_coordinates(const HoloFunction& f);

/// Composition operator C_phi (forward) or C_{phi^{-1}} (inverse).
class CompositionOperator {
public:
    enum class Direction { Forward, Inverse };

    CompositionOperator(PolydiskAutomorphism phi, Direction direction = Direction::Forward);

    const PolydiskAutomorphism& automorphism() const noexcept { return phi_; }
    Direction direction() const noexcept { return direction_; }

    /// The automorphism that gets composed on the right of f.
    const PolydiskAutomorphism& acting_map() const noexcept { return acting_; }

    HoloFunction operator()(const HoloFunction& f) const;

    CompositionOperator right_inverse() const;

private:
    PolydiskAutomorphism phi_;
    Direction direction_;
    PolydiskAutomorphism acting_;
};

/// Radius on which Taylor coefficients are sampled.
inline constexpr double kTaylorRadius = 0.75;

/// c_0..c_N of a one-variable function by discrete Fourier inversion of
/// samples on |z| = 0.75 with Q = 4(N+1) nodes.
std::vector<Complex> taylor_coeffs(const HoloFunction& f, std::size_t N);

template <typename Fn>
std::vector<Complex> taylor_coeffs_of(const Fn& f, std::size_t N);

// ---------------------------------------------------------------------------

template <typename Fn>
std::vector<Complex> taylor_coeffs_of(const Fn& f, std::size_t N)
{
    const std::size_t Q = 4 * (N + 1);
    std::vector<Complex> samples(Q);
    for (std::size_t t = 0; t < Q; ++t)
        samples[t] = f(std::polar(kTaylorRadius, 2.0 * std::numbers::pi * double(t) / double(Q)));
    std::vector<Complex> c(N + 1);
    for (std::size_t m = 0; m <= N; ++m) {
        Complex acc(0.0, 0.0);
        for (std::size_t t = 0; t < Q; ++t) {
            const std::size_t phase = (m * t) % Q;
            acc += samples[t] * std::polar(1.0, -2.0 * std::numbers::pi * double(phase) / double(Q));
        }
        c[m] = acc / double(Q) * std::pow(kTaylorRadius, -double(m));
    }
    return c;
}

}  // namespace polyuni
