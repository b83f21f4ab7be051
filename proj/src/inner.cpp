#include "polyuni/inner.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "polyuni/error.hpp"

namespace polyuni {

namespace {

/// Calls fn(point) for every node of the Q^n tensor grid r * e^{2 pi i t/Q}.
template <typename Fn>
void for_each_torus_node(std::size_t n, std::size_t Q, double r, const Fn& fn)
{
    std::vector<Complex> ring(Q);
    for (std::size_t t = 0; t < Q; ++t) ring[t] = std::polar(r, 2.0 * std::numbers::pi * double(t) / double(Q));
    std::vector<std::size_t> idx(n, 0);
    std::vector<Complex> z(n, ring[0]);
    while (true) {
        fn(std::span<const Complex>(z));
        std::size_t d = n;
        while (d-- > 0) {
            if (++idx[d] < Q) {
                z[d] = ring[idx[d]];
                break;
            }
            idx[d] = 0;
            z[d] = ring[0];
        }
        if (d == std::size_t(-1)) return;
    }
}

}  // namespace

RadialReport radial_modulus_report(const HoloFunction& f, const std::vector<double>& radii, std::size_t Q)
{
    if (Q == 0) throw Error(ErrorCode::ValidityError, "angle grid needs at least one node");
    RadialReport rep;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::ValidityError, "radii must lie in (0,1)");
        if (i > 0 && !(r > radii[i - 1])) throw Error(ErrorCode::ValidityError, "radii must be strictly increasing");
        double worst = 0.0;
        for_each_torus_node(f.dimension(), Q, r,
                            [&](std::span<const Complex> z) { worst = std::max(worst, std::abs(1.0 - std::abs(f(z)))); });
        rep.radii.push_back(r);
        rep.deviation.push_back(worst);
    }
    return rep;
}

TorusMean good_inner_integral(const HoloFunction& g, double r, std::size_t Q, double clamp)
{
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::ValidityError, "radius must lie in (0,1)");
    if (Q < 16) throw Error(ErrorCode::ValidityError, "quadrature needs at least 16 nodes per dimension");
    if (!(clamp > 0.0)) throw Error(ErrorCode::ValidityError, "clamp level must be positive");
    TorusMean out;
    double sum = 0.0;
    std::size_t count = 0;
    for_each_torus_node(g.dimension(), Q, r, [&](std::span<const Complex> z) {
        double v = std::log(std::abs(g(z)));
        if (!(v >= -clamp)) {
            v = -clamp;
            ++out.clamped;
        }
        sum += v;
        ++count;
    });
    out.value = sum / double(count);
    return out;
}

double jensen_oracle(const std::vector<Complex>& zeros, double value_at_0_modulus, double r)
{
    double acc = std::log(value_at_0_modulus);
    for (const auto& a : zeros) {
        const double m = std::abs(a);
        if (std::abs(m - r) < 1e-6)
            throw Error(ErrorCode::RadiusOnZeroModulus, "radius " + std::to_string(r) + " sits on a zero modulus");
        if (m < r) acc += std::log(r / m);
    }
    return acc;
}

namespace {

// equal tail values (no zeros between two radii) differ only by rounding
constexpr double kQuadratureNoise = 1e-10;

}  // namespace

GoodInnerReport good_inner_trend(const HoloFunction& g, const std::vector<double>& radii, std::size_t Q, double clamp,
                                 double tolerance)
{
    if (radii.empty()) throw Error(ErrorCode::ValidityError, "empty radius schedule");
    GoodInnerReport rep;
    rep.clamp = clamp;
    rep.nodes = Q;
    rep.tolerance = tolerance;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (i > 0 && !(radii[i] > radii[i - 1])) throw Error(ErrorCode::ValidityError, "radii must be strictly increasing");
        const auto m = good_inner_integral(g, radii[i], Q, clamp);
        rep.radii.push_back(radii[i]);
        rep.values.push_back(m.value);
        rep.clamped.push_back(m.clamped);
        rep.quadrature_error.push_back(Q >= 2 ? std::abs(m.value - good_inner_integral(g, radii[i], Q / 2, clamp).value) : 0.0);
    }
    bool ok = std::abs(rep.values.back()) < tolerance;
    const std::size_t first = rep.values.size() >= 3 ? rep.values.size() - 3 : 0;
    for (std::size_t i = first + 1; i < rep.values.size(); ++i)
        ok = ok && std::abs(rep.values[i]) <= std::abs(rep.values[i - 1]) + rep.quadrature_error[i] +
                              rep.quadrature_error[i - 1] + kQuadratureNoise;
    rep.passed = ok;
    return rep;
}

// ---------------------------------------------------------------------------

SchurParameters schur_parameters(const std::vector<Complex>& coeffs, std::size_t depth)
{
    if (coeffs.size() < depth || coeffs.empty())
        throw Error(ErrorCode::ValidityError, "Schur recursion needs at least max(depth, 1) coefficients");
    SchurParameters out;
    std::vector<Complex> f = coeffs;
    for (std::size_t k = 0; k < depth; ++k) {
        const Complex g = f[0];
        const double m = std::abs(g);
        if (m > 1.0 + 1e-9)
            throw Error(ErrorCode::SchurParameterOutOfDisk,
                        "Schur parameter " + std::to_string(k) + " has modulus " + std::to_string(m));
        if (m >= 1.0 - 1e-9) {
            out.terminal = g / m;
            return out;
        }
        out.gamma.push_back(g);
        if (k + 1 == depth) break;
        // f_{k+1} = (f_k - g) / (z (1 - conj(g) f_k)), truncated one order shorter
        const std::size_t L = f.size() - 1;
        std::vector<Complex> num(f.begin() + 1, f.end());
        std::vector<Complex> den(L);
        for (std::size_t i = 0; i < L; ++i) den[i] = (i == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0)) - std::conj(g) * f[i];
        std::vector<Complex> q(L);
        for (std::size_t i = 0; i < L; ++i) {
            Complex acc = num[i];
            for (std::size_t j = 1; j <= i; ++j) acc -= den[j] * q[i - j];
            q[i] = acc / den[0];
        }
        f = std::move(q);
    }
    return out;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& c)
{
    const std::size_t deg = c.size() - 1;
    if (c.empty() || c.back() == Complex(0.0, 0.0)) throw Error(ErrorCode::ValidityError, "leading coefficient vanishes");
    if (deg == 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(Eigen::Index(deg), Eigen::Index(deg));
    for (std::size_t i = 1; i < deg; ++i) companion(Eigen::Index(i), Eigen::Index(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) companion(Eigen::Index(i), Eigen::Index(deg - 1)) = -c[i] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> roots(deg);
    for (std::size_t i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()(Eigen::Index(i));

    // Newton polish against the original coefficients
    for (auto& z : roots) {
        for (int it = 0; it < 8; ++it) {
            Complex p = c.back(), dp(0.0, 0.0);
            for (std::size_t k = deg; k-- > 0;) {
                dp = dp * z + p;
                p = p * z + c[k];
            }
            if (std::abs(dp) == 0.0) break;
            const Complex step = p / dp;
            z -= step;
            if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
        }
    }
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

HoloFunction blaschke_from_schur(const std::vector<Complex>& gamma, Complex tail, std::size_t n, std::size_t coordinate)
{
    if (std::abs(std::abs(tail) - 1.0) > 1e-12) throw Error(ErrorCode::ValidityError, "Schur tail must be unimodular");
    if (gamma.empty()) return HoloFunction::constant(n, tail);

    // f_k = (g_k + z f_{k+1}) / (1 + conj(g_k) z f_{k+1}) on numerator/denominator polynomials
    std::vector<Complex> P{tail}, Q{Complex(1.0, 0.0)};
    for (std::size_t k = gamma.size(); k-- > 0;) {
        const Complex g = gamma[k];
        std::vector<Complex> nP(P.size() + 1, 0.0), nQ(P.size() + 1, 0.0);
        for (std::size_t i = 0; i < Q.size(); ++i) {
            nP[i] += g * Q[i];
            nQ[i] += Q[i];
        }
        for (std::size_t i = 0; i < P.size(); ++i) {
            nP[i + 1] += P[i];
            nQ[i + 1] += std::conj(g) * P[i];
        }
        P = std::move(nP);
        Q = std::move(nQ);
    }

    auto zeros = polynomial_roots(P);
    std::vector<MobiusFactor> factors;
    for (auto a : zeros) {
        const double m = std::abs(a);
        if (m >= 1.0) a *= (1.0 - 1e-15) / m;
        factors.emplace_back(a, std::numbers::pi);  // (z - a)/(1 - conj(a) z)
    }

    // unimodular constant from one well-separated sample
    const Complex candidates[] = {{0.0, 0.0}, {0.5, 0.0}, {-0.5, 0.0}, {0.0, 0.5}, {0.0, -0.5}};
    Complex z0 = candidates[0];
    double best = -1.0;
    for (auto z : candidates) {
        double sep = 1.0;
        for (auto a : zeros) sep = std::min(sep, std::abs(z - a));
        if (sep > best) {
            best = sep;
            z0 = z;
        }
    }
    auto horner = [](const std::vector<Complex>& c, Complex z) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
        return acc;
    };
    Complex prod(1.0, 0.0);
    for (const auto& f : factors) prod *= f(z0);
    Complex c = horner(P, z0) / horner(Q, z0) / prod;
    c /= std::abs(c);

    std::vector<HoloFunction> children;
    children.push_back(HoloFunction::constant(n, c));
    for (const auto& f : factors) children.push_back(HoloFunction::blaschke(n, f, coordinate));
    return HoloFunction::product(std::move(children));
}

HoloFunction schur_project(const std::vector<Complex>& coeffs, std::size_t depth, Complex tail, std::size_t n,
                           std::size_t coordinate)
{
    const auto params = schur_parameters(coeffs, depth);
    return blaschke_from_schur(params.gamma, params.terminal.value_or(tail), n, coordinate);
}

// ---------------------------------------------------------------------------

Complex corrector_rotation(int j, Complex w)
{
    if (j < 1 || j > 52) throw Error(ErrorCode::ValidityError, "corrector index must lie in 1..52");
    if (std::abs(std::abs(w) - 1.0) > 1e-12) throw Error(ErrorCode::ValidityError, "corrector target must be unimodular");
    const double r = 1.0 - std::ldexp(1.0, -j);
    // psi(1) = (r - u)/(1 - r u) with u = e^{-i phi}; the map is an involution in u
    const Complex u = (r - w) / (1.0 - r * w);
    return u / std::abs(u);
}

HoloFunction make_corrector(int j, Complex xi, Complex w, std::size_t n)
{
    if (std::abs(std::abs(xi) - 1.0) > 1e-12) throw Error(ErrorCode::ValidityError, "corrector pin must be unimodular");
    const Complex u = corrector_rotation(j, w);
    const double r = 1.0 - std::ldexp(1.0, -j);
    const Complex a = r * std::conj(u);  // zero of psi
    // psi(conj(xi) z) = e^{-i phi} conj(xi) (a xi - z) / (1 - conj(a xi) z)
    return HoloFunction::blaschke(n, MobiusFactor(a * xi, std::arg(u * std::conj(xi))), 0);
}

GeneratingElement make_generating_element(int j, const TorusPoint& pin, const HoloFunction& approximant)
{
    if (pin.dimension() != approximant.dimension())
        throw Error(ErrorCode::DimensionMismatch, "pin and approximant dimensions differ");
    const Complex v = approximant(pin);
    const double m = std::abs(v);
    if (std::abs(m - 1.0) > 1e-9)
        throw Error(ErrorCode::PinNotUnimodular, "approximant has modulus " + std::to_string(m) + " at the pin");
    const Complex w = std::conj(v) / m;
    auto psi = make_corrector(j, pin.coords()[0], w, pin.dimension());
    auto g = approximant * psi;
    return GeneratingElement{j, pin.coords(), approximant, psi, g};
}

}  // namespace polyuni
