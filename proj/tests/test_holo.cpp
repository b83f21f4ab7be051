#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyuni/error.hpp"
#include "polyuni/holo.hpp"
#include "polyuni/metric.hpp"
#include "support.hpp"

using namespace polyuni;
using std::numbers::pi;
using Dir = CompositionOperator::Direction;

namespace {

HoloFunction random_tree(std::mt19937_64& rng, std::size_t n, int depth)
{
    const int pick = int(rng() % (depth > 0 ? 6 : 3));
    switch (pick) {
    case 0: return HoloFunction::constant(n, testing::disk_point(rng, 1.0));
    case 1: return HoloFunction::coordinate(n, rng() % n);
    case 2: return HoloFunction::blaschke(n, testing::random_factor(rng, 0.95), rng() % n);
    case 3: return random_tree(rng, n, depth - 1) * random_tree(rng, n, depth - 1);
    case 4: return HoloFunction::composed(testing::random_automorphism(rng, n), random_tree(rng, n, depth - 1));
    default: return HoloFunction::power(random_tree(rng, n, depth - 1), 1 + unsigned(rng() % 4));
    }
}

}  // namespace

TEST_CASE("evaluation examples")
{
    CHECK(HoloFunction::constant(2, 0.5)(CPoint{0.3, -0.1}) == Complex(0.5, 0.0));
    const auto z1z2 = HoloFunction::product({HoloFunction::coordinate(2, 0), HoloFunction::coordinate(2, 1)});
    CHECK(std::abs(z1z2(CPoint{0.3, 0.4}) - 0.12) < 1e-16);
    const auto b = HoloFunction::blaschke(1, MobiusFactor(0.5, 0.0), 0);
    CHECK(std::abs(b(CPoint{0.25}) - 2.0 / 7.0) < 1e-15);
    CHECK(std::abs(HoloFunction::power(b, 3)(CPoint{0.25}) - 8.0 / 343.0) < 1e-15);
    CHECK(b(TorusPoint({1.0})) == Complex(-1.0, 0.0));
}

TEST_CASE("construction checks")
{
    CHECK_THROWS_AS(HoloFunction::constant(1, 1.0001), Error);
    CHECK_NOTHROW(HoloFunction::constant(1, std::polar(1.0, 0.3)));
    CHECK_THROWS_AS(HoloFunction::coordinate(2, 2), Error);
    CHECK_THROWS_AS(HoloFunction::blaschke(2, MobiusFactor(0.1, 0.0), 5), Error);
    CHECK_THROWS_AS(HoloFunction::product({}), Error);
    CHECK_THROWS_AS(HoloFunction::product({HoloFunction::coordinate(1, 0), HoloFunction::coordinate(2, 0)}), Error);
    CHECK_THROWS_AS(HoloFunction::power(HoloFunction::coordinate(1, 0), 0), Error);
    CHECK_THROWS_AS(HoloFunction::composed(PolydiskAutomorphism::identity(2), HoloFunction::coordinate(1, 0)), Error);
    CHECK_THROWS_AS(HoloFunction::coordinate(2, 0)(CPoint{0.1}), Error);
}

TEST_CASE("structure helpers")
{
    const auto f = HoloFunction::blaschke(3, MobiusFactor(0.2, 1.0), 2) * HoloFunction::coordinate(3, 0);
    CHECK(f == HoloFunction::blaschke(3, MobiusFactor(0.2, 1.0), 2) * HoloFunction::coordinate(3, 0));
    CHECK_FALSE(f == HoloFunction::blaschke(3, MobiusFactor(0.2, 1.0), 1) * HoloFunction::coordinate(3, 0));
    CHECK(f.as<node::Product>() != nullptr);
    CHECK(f.as<node::Constant>() == nullptr);
    CHECK(dependent_coordinates(f) == std::vector<std::size_t>{0, 2});
    CHECK(is_inner_tree(f));
    CHECK(is_inner_tree(f * HoloFunction::constant(3, Complex(0.0, 1.0))));
    CHECK_FALSE(is_inner_tree(f * HoloFunction::constant(3, 0.5)));
    const PolydiskAutomorphism cyc({1, 2, 0}, {MobiusFactor::identity(), MobiusFactor::identity(), MobiusFactor::identity()});
    CHECK(dependent_coordinates(HoloFunction::composed(cyc, HoloFunction::coordinate(3, 0))) ==
          std::vector<std::size_t>{1});
}

TEST_CASE("tree evaluation matches a brute-force walk")
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + t % 3;
        const auto f = random_tree(rng, n, 3);
        for (int i = 0; i < 5; ++i) {
            const auto z = testing::random_point(rng, n, 0.99);
            CHECK(std::abs(f(z) - testing::brute_eval(f, z.coords)) < 1e-12);
        }
    }
}

TEST_CASE("ball membership")
{
    std::mt19937_64 rng(22);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 3;
        const auto f = random_tree(rng, n, 4);
        for (int i = 0; i < 1000; ++i) CHECK(std::abs(f(testing::random_point(rng, n, 0.999999))) <= 1.0 + 1e-12);
    }
}

TEST_CASE("composition operator laws")
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + t % 3;
        const CompactProbe probe(0.6, n == 1 ? 32 : (n == 2 ? 10 : 5), n);
        const auto f = random_tree(rng, n, 3);
        const auto g = random_tree(rng, n, 3);
        const auto phi = testing::random_automorphism(rng, n, 0.95);
        const CompositionOperator T(phi);
        const auto R = T.right_inverse();
        CHECK(R.direction() == Dir::Inverse);
        CHECK(probe_sup(CompositionOperator(PolydiskAutomorphism::identity(n))(f), f, probe) <= 1e-12);
        CHECK(probe_sup(T(R(f)), f, probe) <= 1e-10);
        CHECK(probe_sup(R(T(f)), f, probe) <= 1e-10);
        CHECK(probe_sup(T(f * g), T(f) * T(g), probe) <= 1e-12);
        for (const auto& z : probe.grid()) CHECK(std::abs(T(f)(z) - f(phi(z))) < 1e-12);
    }
    CHECK_THROWS_AS(CompositionOperator(PolydiskAutomorphism::identity(2))(HoloFunction::coordinate(1, 0)), Error);
}

TEST_CASE("taylor coefficient examples")
{
    const auto c = taylor_coeffs(HoloFunction::constant(1, Complex(0.3, -0.4)), 8);
    CHECK(std::abs(c[0] - Complex(0.3, -0.4)) < 1e-14);
    for (std::size_t m = 1; m <= 8; ++m) CHECK(std::abs(c[m]) < 1e-13);

    const auto z = taylor_coeffs(HoloFunction::coordinate(1, 0), 8);
    CHECK(std::abs(z[1] - 1.0) < 1e-14);
    CHECK(std::abs(z[0]) < 1e-14);
    for (std::size_t m = 2; m <= 8; ++m) CHECK(std::abs(z[m]) < 1e-13);

    // (0.5 + z) / (1 + 0.5 z) = (0.5 + z) * sum (-0.5 z)^k; in the
    // e^{it}(a - z)/(1 - conj(a) z) convention this is a = -0.5, t = pi
    const std::size_t N = 16;
    const auto f = HoloFunction::blaschke(1, MobiusFactor(-0.5, pi), 0);
    CHECK(std::abs(f(CPoint{0.3}) - 0.8 / 1.15) < 1e-15);
    const auto b = taylor_coeffs(f, N);
    std::vector<double> series(N + 1);
    for (std::size_t m = 0; m <= N; ++m) {
        series[m] = 0.5 * std::pow(-0.5, double(m));
        if (m > 0) series[m] += std::pow(-0.5, double(m - 1));
    }
    CHECK(series[1] == 0.75);
    CHECK(series[2] == -0.375);
    CHECK(series[3] == 0.1875);
    for (std::size_t m = 0; m <= N; ++m) CHECK(std::abs(b[m] - series[m]) < 1e-12);

    // a = 0.5, t = pi is (z - 0.5)/(1 - 0.5 z): c_m = -0.5 * 0.5^m + 0.5^{m-1}
    const auto b2 = taylor_coeffs(HoloFunction::blaschke(1, MobiusFactor(0.5, pi), 0), N);
    CHECK(std::abs(b2[0] + 0.5) < 1e-14);
    for (std::size_t m = 1; m <= N; ++m)
        CHECK(std::abs(b2[m] - (-0.5 * std::pow(0.5, double(m)) + std::pow(0.5, double(m - 1)))) < 1e-12);

    CHECK_THROWS_AS(taylor_coeffs(HoloFunction::coordinate(2, 0), 4), Error);
}

TEST_CASE("taylor round trip on the small disk")
{
    std::mt19937_64 rng(24);
    for (int t = 0; t < 30; ++t) {
        const auto f = random_tree(rng, 1, 3);
        const std::size_t N = 12 + t % 12;
        const auto c = taylor_coeffs(f, N);
        const double bound = 2.0 * std::pow(0.25, double(N + 1)) / 0.75 + 1e-10;
        double err = 0.0;
        const CompactProbe probe(0.25, 64, 1);
        for (const auto& z : probe.grid()) {
            Complex s = 0.0, p = 1.0;
            for (std::size_t m = 0; m <= N; ++m, p *= z.coords[0]) s += c[m] * p;
            err = std::max(err, std::abs(s - f(z)));
        }
        CHECK(err <= bound);
    }
}
