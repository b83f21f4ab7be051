#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "polyuni/geometry.hpp"

namespace polyuni {

/// Maps an angle into (-pi, pi].
double normalize_angle(double theta) noexcept;

/// Disk automorphism z -> e^{i theta} (alpha - z) / (1 - conj(alpha) z).
class MobiusFactor {
public:
    MobiusFactor(Complex alpha, double theta);

    /// Converts the multiplier convention (alpha - mu z)/(1 - conj(alpha) mu z),
    /// |mu| = 1, into the rotation-outside form used everywhere else.
    static MobiusFactor from_multiplier_form(Complex alpha, Complex mu);

    /// z -> z, written as alpha = 0, theta = pi.
    static MobiusFactor identity() { return MobiusFactor({0.0, 0.0}, std::numbers::pi); }

    Complex alpha() const noexcept { return alpha_; }
    double theta() const noexcept { return theta_; }
    Complex rotation() const noexcept { return rotation_; }

    /// Throws PoleHit when |1 - conj(alpha) z| < 1e-15.
    Complex operator()(Complex z) const;

    /// alpha' = e^{i theta} alpha, theta' = -theta.
    MobiusFactor inverse() const;

    bool operator==(const MobiusFactor& o) const noexcept
    {
        return alpha_ == o.alpha_ && theta_ == o.theta_;
    }

private:
    Complex alpha_;
    double theta_;
    Complex rotation_;
};

/// Recovers the normal form of a one-variable automorphism from two samples
/// of it. `map` must be a disk automorphism; `inverse_at_zero` is map^{-1}(0).
template <typename Map>
MobiusFactor recover_mobius(const Map& map, Complex inverse_at_zero);

/// phi(z)_j = sigma_j(z_{p(j)}), permutation stored 0-based.
class PolydiskAutomorphism {
public:
    PolydiskAutomorphism(std::vector<std::size_t> permutation, std::vector<MobiusFactor> factors);

    static PolydiskAutomorphism identity(std::size_t n);

    std::size_t dimension() const noexcept { return factors_.size(); }
    const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
    const std::vector<MobiusFactor>& factors() const noexcept { return factors_; }

    /// Writes phi(z) into `out`; sizes must equal dimension().
    void apply(std::span<const Complex> z, std::span<Complex> out) const;
    CPoint operator()(const CPoint& z) const;

    PolydiskAutomorphism inverse() const;

    bool operator==(const PolydiskAutomorphism&) const = default;

private:
    std::vector<std::size_t> perm_;
    std::vector<MobiusFactor> factors_;
};

/// Normal form of z -> outer(inner(z)).
PolydiskAutomorphism compose(const PolydiskAutomorphism& outer, const PolydiskAutomorphism& inner);

std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& p);

/// Parametric family phi_k, k = 1, 2, ...:
///   alpha_j^k = (1 - rate/(k+1)) * direction_j   (or fixed_modulus * direction_j)
///   theta_j^k = theta_j + theta_drift_j/(k+1)
///   p_k       = permutations[k mod P]
struct SequenceGenerator {
    std::vector<Complex> direction;
    double rate = 1.0;
    std::optional<double> fixed_modulus;
    std::vector<double> theta;
    std::vector<double> theta_drift;
    std::vector<std::vector<std::size_t>> permutations;

    bool operator==(const SequenceGenerator&) const = default;
};

class AutomorphismSequence {
public:
    explicit AutomorphismSequence(std::vector<PolydiskAutomorphism> elements);
    explicit AutomorphismSequence(SequenceGenerator generator);

    std::size_t dimension() const noexcept { return dimension_; }
    bool is_explicit() const noexcept { return std::holds_alternative<std::vector<PolydiskAutomorphism>>(source_); }

    /// Largest valid index (INT64_MAX for generated sequences).
    std::int64_t size() const noexcept;

    /// 1-based access.
    PolydiskAutomorphism at(std::int64_t k) const;

    const std::variant<std::vector<PolydiskAutomorphism>, SequenceGenerator>& source() const noexcept
    {
        return source_;
    }

private:
    std::variant<std::vector<PolydiskAutomorphism>, SequenceGenerator> source_;
    std::size_t dimension_;
};

struct SelectionOptions {
    std::int64_t horizon = 1000;
    double angle_tol = 0.05;
    /// max_j (1 - |alpha_j^k|) must drop below this by the last selected index.
    double boundary_threshold = 0.01;
};

/// Subsequence along which the permutation is constant and the angles
/// cluster, together with the boundary limit points of phi_k and phi_k^{-1}.
struct SubsequenceSelection {
    std::vector<std::int64_t> indices;  // selected k <= horizon, increasing
    std::vector<std::size_t> permutation;
    std::vector<std::int64_t> angle_cell;
    std::vector<double> limit_angles;   // centroid (circular mean) of the cell
    std::vector<Complex> limit_alpha;   // unimodular directions of alpha
    std::vector<Complex> lambda;        // limit of phi_k on compacts
    std::vector<Complex> gamma;         // limit of phi_k^{-1} on compacts
    std::int64_t horizon = 0;
    double angle_tol = 0.0;

    TorusPoint lambda_point() const { return TorusPoint(lambda); }
    TorusPoint gamma_point() const { return TorusPoint(gamma); }

    /// Membership of k: inside the horizon it is cell membership, beyond it
    /// the permutation must match and each angle lie within angle_tol of the
    /// centroid.
    bool contains(const AutomorphismSequence& seq, std::int64_t k) const;

    /// Smallest member >= k, scanning at most `max_scan` indices.
    std::optional<std::int64_t> next_member(const AutomorphismSequence& seq, std::int64_t k,
                                            std::int64_t max_scan = 100000) const;
};

SubsequenceSelection select_subsequence(const AutomorphismSequence& seq, const SelectionOptions& options = {});

// ---------------------------------------------------------------------------

template <typename Map>
MobiusFactor recover_mobius(const Map& map, Complex inverse_at_zero)
{
    Complex alpha = inverse_at_zero;
    const double mod = std::abs(alpha);
    if (mod >= 1.0) alpha *= (1.0 - 0x1p-52) / mod;
    // Sample far from the zero so the quotient stays well conditioned.
    const Complex z0 = std::abs(alpha) >= 0.25 ? Complex(0.0, 0.0) : Complex(0.5, 0.0);
    Complex phase = map(z0) * (1.0 - std::conj(alpha) * z0) / (alpha - z0);
    return MobiusFactor(alpha, std::arg(phase));
}

}  // namespace polyuni
