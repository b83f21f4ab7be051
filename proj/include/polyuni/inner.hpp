#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polyuni/geometry.hpp"
#include "polyuni/holo.hpp"

namespace polyuni {

// --- diagnostics -----------------------------------------------------------

struct RadialReport {
    std::vector<double> radii;
    std::vector<double> deviation;  // max over the angle grid of |1 - |f||
};

/// Evaluates |f(r e^{i t_1}, ..., r e^{i t_n})| on the Q^n angle grid.
RadialReport radial_modulus_report(const HoloFunction& f, const std::vector<double>& radii, std::size_t Q);

struct TorusMean {
    double value = 0.0;
    std::size_t clamped = 0;  // nodes where log|g| fell below -L
};

/// (1/Q^n) sum over the torus grid of max(log|g(r zeta)|, -L).
TorusMean good_inner_integral(const HoloFunction& g, double r, std::size_t Q, double clamp = 40.0);

/// Mean of log|B| over |z| = r for a finite Blaschke product with the given
/// zeros and |B(0)| = value_at_0_modulus.
double jensen_oracle(const std::vector<Complex>& zeros, double value_at_0_modulus, double r);

struct GoodInnerReport {
    std::vector<double> radii;
    std::vector<double> values;
    std::vector<std::size_t> clamped;
    std::vector<double> quadrature_error;  // |I_Q - I_{Q/2}|
    double clamp = 40.0;
    std::size_t nodes = 512;
    double tolerance = 0.02;
    bool passed = false;
};

/// Passes when |I(r_last)| < tolerance and |I| is nonincreasing over the
/// last three radii, up to the estimated quadrature error.
GoodInnerReport good_inner_trend(const HoloFunction& g, const std::vector<double>& radii, std::size_t Q = 512,
                                 double clamp = 40.0, double tolerance = 0.02);

// --- Schur projector -------------------------------------------------------

struct SchurParameters {
    std::vector<Complex> gamma;  // |gamma_k| < 1
    /// Set when the recursion hit a unimodular parameter: the input is a
    /// finite Blaschke product of degree gamma.size() with this tail.
    std::optional<Complex> terminal;
};

/// Runs the Schur recursion on truncated coefficients for at most `depth`
/// steps.
SchurParameters schur_parameters(const std::vector<Complex>& coeffs, std::size_t depth);

/// Reconstructs the finite Blaschke product with the given parameters and
/// unimodular tail, as a tree acting on `coordinate` of C^n.
HoloFunction blaschke_from_schur(const std::vector<Complex>& gamma, Complex tail, std::size_t n = 1,
                                 std::size_t coordinate = 0);

/// Finite Blaschke product whose first `depth` Taylor coefficients agree with
/// `coeffs`. A unimodular parameter before `depth` ends the recursion early
/// (the input already is a Blaschke product).
HoloFunction schur_project(const std::vector<Complex>& coeffs, std::size_t depth, Complex tail = {1.0, 0.0},
                           std::size_t n = 1, std::size_t coordinate = 0);

/// Roots of sum_k c_k z^k (c.back() != 0).
std::vector<Complex> polynomial_roots(const std::vector<Complex>& c);

// --- correctors and generating elements ------------------------------------

/// e^{-i phi} for the one-variable corrector with psi(0) = 1 - 2^{-j} and
/// psi(1) = w.
Complex corrector_rotation(int j, Complex w);

/// Psi(z) = psi(conj(xi) z_1) with psi(0) = 1 - 2^{-j} and Psi(xi, ...) = w.
HoloFunction make_corrector(int j, Complex xi, Complex w, std::size_t n);

struct GeneratingElement {
    int index = 0;
    std::vector<Complex> pin;
    HoloFunction approximant;
    HoloFunction corrector;
    HoloFunction product;
};

/// G = A * Psi with G(pin) = 1 and Psi(0) = 1 - 2^{-j}.
GeneratingElement make_generating_element(int j, const TorusPoint& pin, const HoloFunction& approximant);

}  // namespace polyuni
