#include "polyuni/holo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "polyuni/error.hpp"

namespace polyuni {

namespace {

std::shared_ptr<const Node> make(Node n) { return std::make_shared<const Node>(std::move(n)); }

void require_index(std::size_t n, std::size_t index)
{
    if (n == 0) throw Error(ErrorCode::ValidityError, "dimension must be positive");
    if (index >= n)
        throw Error(ErrorCode::ValidityError,
                    "coordinate index " + std::to_string(index + 1) + " out of range for dimension " + std::to_string(n));
}

Complex ipow(Complex base, unsigned m)
{
    Complex result(1.0, 0.0);
    while (m) {
        if (m & 1u) result *= base;
        base *= base;
        m >>= 1u;
    }
    return result;
}

}  // namespace

HoloFunction HoloFunction::constant(std::size_t n, Complex c)
{
    if (n == 0) throw Error(ErrorCode::ValidityError, "dimension must be positive");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > 1.0 + 1e-12)
        throw Error(ErrorCode::ValidityError, "constant outside the closed unit disk");
    return HoloFunction(n, make(Node{node::Constant{c}}));
}

HoloFunction HoloFunction::coordinate(std::size_t n, std::size_t index)
{
    require_index(n, index);
    return HoloFunction(n, make(Node{node::Coordinate{index}}));
}

HoloFunction HoloFunction::blaschke(std::size_t n, MobiusFactor f, std::size_t coordinate)
{
    require_index(n, coordinate);
    return HoloFunction(n, make(Node{node::Blaschke{f, coordinate}}));
}

HoloFunction HoloFunction::product(std::vector<HoloFunction> children)
{
    if (children.empty()) throw Error(ErrorCode::ValidityError, "empty product");
    const std::size_t n = children.front().dimension();
    for (const auto& c : children)
        if (c.dimension() != n) throw Error(ErrorCode::DimensionMismatch, "product of functions of different dimension");
    return HoloFunction(n, make(Node{node::Product{std::move(children)}}));
}

HoloFunction HoloFunction::composed(PolydiskAutomorphism inner, HoloFunction outer)
{
    if (inner.dimension() != outer.dimension())
        throw Error(ErrorCode::DimensionMismatch, "composition with automorphism of different dimension");
    const std::size_t n = outer.dimension();
    return HoloFunction(n, make(Node{node::Composed{std::move(inner), std::move(outer)}}));
}

HoloFunction HoloFunction::power(HoloFunction base, unsigned exponent)
{
    if (exponent < 1) throw Error(ErrorCode::ValidityError, "power exponent must be at least 1");
    const std::size_t n = base.dimension();
    return HoloFunction(n, make(Node{node::Power{std::move(base), exponent}}));
}

Complex HoloFunction::operator()(std::span<const Complex> z) const
{
    if (z.size() != dimension_)
        throw Error(ErrorCode::DimensionMismatch, "evaluating a function of dimension " + std::to_string(dimension_) +
                                                      " at a point of dimension " + std::to_string(z.size()));
    struct Visitor {
        std::span<const Complex> z;
        Complex operator()(const node::Constant& c) const { return c.value; }
        Complex operator()(const node::Coordinate& c) const { return z[c.index]; }
        Complex operator()(const node::Blaschke& b) const { return b.factor(z[b.coordinate]); }
        Complex operator()(const node::Product& p) const
        {
            Complex acc(1.0, 0.0);
            for (const auto& c : p.children) acc *= c(z);
            return acc;
        }
        Complex operator()(const node::Composed& c) const
        {
            std::vector<Complex> w(z.size());
            c.inner.apply(z, w);
            return c.outer(std::span<const Complex>(w));
        }
        Complex operator()(const node::Power& p) const { return ipow(p.base(z), p.exponent); }
    };
    return std::visit(Visitor{z}, node_->v);
}

bool HoloFunction::operator==(const HoloFunction& other) const
{
    if (dimension_ != other.dimension_) return false;
    if (node_ == other.node_) return true;
    const auto& a = node_->v;
    const auto& b = other.node_->v;
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b);
            if constexpr (std::is_same_v<T, node::Constant>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, node::Coordinate>) return x.index == y.index;
            else if constexpr (std::is_same_v<T, node::Blaschke>) return x.factor == y.factor && x.coordinate == y.coordinate;
            else if constexpr (std::is_same_v<T, node::Product>) return x.children == y.children;
            else if constexpr (std::is_same_v<T, node::Composed>) return x.inner == y.inner && x.outer == y.outer;
            else return x.exponent == y.exponent && x.base == y.base;
        },
        a);
}

HoloFunction operator*(const HoloFunction& a, const HoloFunction& b) { return HoloFunction::product({a, b}); }

bool is_inner_tree(const HoloFunction& f)
{
    return std::visit(
        [](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Constant>) return std::abs(std::abs(x.value) - 1.0) <= 1e-12;
            else if constexpr (std::is_same_v<T, node::Product>)
                return std::all_of(x.children.begin(), x.children.end(), [](const auto& c) { return is_inner_tree(c); });
            else if constexpr (std::is_same_v<T, node::Composed>) return is_inner_tree(x.outer);
            else if constexpr (std::is_same_v<T, node::Power>) return is_inner_tree(x.base);
            else return true;
        },
        f.node().v);
}

namespace {

void collect(const HoloFunction& f, std::set<std::size_t>& out)
{
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Coordinate>) out.insert(x.index);
            else if constexpr (std::is_same_v<T, node::Blaschke>) out.insert(x.coordinate);
            else if constexpr (std::is_same_v<T, node::Product>) {
                for (const auto& c : x.children) collect(c, out);
            } else if constexpr (std::is_same_v<T, node::Power>) collect(x.base, out);
            else if constexpr (std::is_same_v<T, node::Composed>) {
                std::set<std::size_t> inner;
                collect(x.outer, inner);
                for (auto j : inner) out.insert(x.inner.permutation()[j]);
            }
        },
        f.node().v);
}

}  // namespace

std::vector<std::size_t> dependent_coordinates(const HoloFunction& f)
{
    std::set<std::size_t> s;
    collect(f, s);
    return {s.begin(), s.end()};
}

CompositionOperator::CompositionOperator(PolydiskAutomorphism phi, Direction direction)
    : phi_(std::move(phi)), direction_(direction),
      acting_(direction == Direction::Forward ? phi_ : phi_.inverse())
{
}

HoloFunction CompositionOperator::operator()(const HoloFunction& f) const
{
    if (f.dimension() != phi_.dimension())
        throw Error(ErrorCode::DimensionMismatch, "operator and function dimensions differ");
    return HoloFunction::composed(acting_, f);
}

CompositionOperator CompositionOperator::right_inverse() const
{
    return CompositionOperator(phi_, direction_ == Direction::Forward ? Direction::Inverse : Direction::Forward);
}

std::vector<Complex> taylor_coeffs(const HoloFunction& f, std::size_t N)
{
    if (f.dimension() != 1) throw Error(ErrorCode::DimensionMismatch, "Taylor coefficients need a one-variable function");
    return taylor_coeffs_of([&](Complex z) { return f(std::span<const Complex>(&z, 1)); }, N);
}

}  // namespace polyuni
