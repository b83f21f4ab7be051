#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "polyuni/automorphism.hpp"
#include "polyuni/holo.hpp"

namespace testing {

using polyuni::Complex;
using polyuni::CPoint;
using polyuni::HoloFunction;
using polyuni::MobiusFactor;
using polyuni::PolydiskAutomorphism;

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex disk_point(std::mt19937_64& rng, double max_modulus)
{
    return std::polar(max_modulus * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, -std::numbers::pi, std::numbers::pi));
}

inline Complex circle_point(std::mt19937_64& rng)
{
    return std::polar(1.0, uniform(rng, -std::numbers::pi, std::numbers::pi));
}

inline MobiusFactor random_factor(std::mt19937_64& rng, double max_modulus = 0.9)
{
    return MobiusFactor(disk_point(rng, max_modulus), uniform(rng, -std::numbers::pi, std::numbers::pi));
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n)
{
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline PolydiskAutomorphism random_automorphism(std::mt19937_64& rng, std::size_t n, double max_modulus = 0.9)
{
    std::vector<MobiusFactor> f;
    for (std::size_t j = 0; j < n; ++j) f.push_back(random_factor(rng, max_modulus));
    return PolydiskAutomorphism(random_permutation(rng, n), f);
}

inline CPoint random_point(std::mt19937_64& rng, std::size_t n, double max_modulus)
{
    std::vector<Complex> c;
    for (std::size_t j = 0; j < n; ++j) c.push_back(disk_point(rng, max_modulus));
    return CPoint(c);
}

/// Random inner tree: product of 1..3 Blaschke factors and coordinates.
inline HoloFunction random_inner(std::mt19937_64& rng, std::size_t n)
{
    std::vector<HoloFunction> parts;
    const int count = 1 + int(rng() % 3);
    for (int i = 0; i < count; ++i) {
        const std::size_t c = rng() % n;
        if (rng() % 3 == 0) parts.push_back(HoloFunction::coordinate(n, c));
        else parts.push_back(HoloFunction::blaschke(n, random_factor(rng, 0.8), c));
    }
    parts.push_back(HoloFunction::constant(n, circle_point(rng)));
    return HoloFunction::product(parts);
}

/// Random ball element that is not inner: a constant of modulus < 1 times an
/// inner tree.
inline HoloFunction random_ball(std::mt19937_64& rng, std::size_t n)
{
    return HoloFunction::constant(n, disk_point(rng, 0.95)) * random_inner(rng, n);
}

/// Reference evaluator: walks the tree node by node and applies every
/// Mobius map from its formula.
inline Complex brute_eval(const HoloFunction& f, const std::vector<Complex>& z)
{
    using namespace polyuni::node;
    auto mobius = [](const MobiusFactor& s, Complex w) {
        const Complex a = s.alpha();
        return std::exp(Complex(0.0, s.theta())) * (a - w) / (1.0 - std::conj(a) * w);
    };
    if (auto c = f.as<Constant>()) return c->value;
    if (auto c = f.as<Coordinate>()) return z[c->index];
    if (auto b = f.as<Blaschke>()) return mobius(b->factor, z[b->coordinate]);
    if (auto p = f.as<Product>()) {
        Complex acc = 1.0;
        for (const auto& c : p->children) acc *= brute_eval(c, z);
        return acc;
    }
    if (auto p = f.as<Power>()) {
        Complex acc = 1.0, base = brute_eval(p->base, z);
        for (unsigned i = 0; i < p->exponent; ++i) acc *= base;
        return acc;
    }
    const auto& c = *f.as<Composed>();
    std::vector<Complex> w(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) w[j] = mobius(c.inner.factors()[j], z[c.inner.permutation()[j]]);
    return brute_eval(c.outer, w);
}

}  // namespace testing
