#include "polyuni/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "polyuni/error.hpp"

namespace polyuni {

double normalize_angle(double theta) noexcept
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::remainder(theta, two_pi);  // [-pi, pi]
    if (t <= -std::numbers::pi) t += two_pi;
    return t;
}

MobiusFactor::MobiusFactor(Complex alpha, double theta)
    : alpha_(alpha), theta_(normalize_angle(theta)), rotation_(std::polar(1.0, theta_))
{
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(theta))
        throw Error(ErrorCode::ValidityError, "Mobius factor parameters must be finite");
    if (!(std::abs(alpha) < 1.0))
        throw Error(ErrorCode::ValidityError, "Mobius factor needs |alpha| < 1");
}

MobiusFactor MobiusFactor::from_multiplier_form(Complex alpha, Complex mu)
{
    if (std::abs(std::abs(mu) - 1.0) > 1e-12)
        throw Error(ErrorCode::ValidityError, "multiplier must be unimodular");
    return MobiusFactor(std::conj(mu) * alpha, std::arg(mu));
}

Complex MobiusFactor::operator()(Complex z) const
{
    const Complex den = 1.0 - std::conj(alpha_) * z;
    if (std::abs(den) < 1e-15) throw Error(ErrorCode::PoleHit, "Mobius factor evaluated at its pole");
    return rotation_ * (alpha_ - z) / den;
}

MobiusFactor MobiusFactor::inverse() const { return MobiusFactor(rotation_ * alpha_, -theta_); }

std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& p)
{
    std::vector<std::size_t> q(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) q[p[j]] = j;
    return q;
}

PolydiskAutomorphism::PolydiskAutomorphism(std::vector<std::size_t> permutation,
                                           std::vector<MobiusFactor> factors)
    : perm_(std::move(permutation)), factors_(std::move(factors))
{
    if (perm_.size() != factors_.size() || perm_.empty())
        throw Error(ErrorCode::DimensionMismatch, "permutation and factor list must have equal positive length");
    std::vector<bool> seen(perm_.size(), false);
    for (auto v : perm_) {
        if (v >= perm_.size() || seen[v]) throw Error(ErrorCode::ValidityError, "not a permutation");
        seen[v] = true;
    }
}

PolydiskAutomorphism PolydiskAutomorphism::identity(std::size_t n)
{
    std::vector<std::size_t> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = j;
    return PolydiskAutomorphism(std::move(p), std::vector<MobiusFactor>(n, MobiusFactor::identity()));
}

void PolydiskAutomorphism::apply(std::span<const Complex> z, std::span<Complex> out) const
{
    if (z.size() != dimension() || out.size() != dimension())
        throw Error(ErrorCode::DimensionMismatch, "automorphism applied to point of wrong dimension");
    for (std::size_t j = 0; j < dimension(); ++j) out[j] = factors_[j](z[perm_[j]]);
}

CPoint PolydiskAutomorphism::operator()(const CPoint& z) const
{
    std::vector<Complex> out(dimension());
    apply(z.view(), out);
    return CPoint(std::move(out));
}

PolydiskAutomorphism PolydiskAutomorphism::inverse() const
{
    const auto q = invert_permutation(perm_);
    std::vector<MobiusFactor> f;
    f.reserve(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) f.push_back(factors_[q[i]].inverse());
    return PolydiskAutomorphism(q, std::move(f));
}

PolydiskAutomorphism compose(const PolydiskAutomorphism& outer, const PolydiskAutomorphism& inner)
{
    if (outer.dimension() != inner.dimension())
        throw Error(ErrorCode::DimensionMismatch, "composing automorphisms of different dimension");
    const std::size_t n = outer.dimension();
    const auto& p = outer.permutation();
    const auto& q = inner.permutation();
    std::vector<std::size_t> r(n);
    std::vector<MobiusFactor> factors;
    factors.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        r[j] = q[p[j]];
        const MobiusFactor& s = outer.factors()[j];
        const MobiusFactor& t = inner.factors()[p[j]];
        // s(alpha_s) = 0, so the composite vanishes at t^{-1}(alpha_s).
        const Complex zero = t.inverse()(s.alpha());
        factors.push_back(recover_mobius([&](Complex z) { return s(t(z)); }, zero));
    }
    return PolydiskAutomorphism(std::move(r), std::move(factors));
}

// ---------------------------------------------------------------------------

namespace {

std::size_t generator_dimension(const SequenceGenerator& g)
{
    const std::size_t n = g.direction.size();
    if (n == 0) throw Error(ErrorCode::ValidityError, "sequence generator needs a direction");
    if (g.theta.size() != n) throw Error(ErrorCode::DimensionMismatch, "theta list length differs from dimension");
    if (!g.theta_drift.empty() && g.theta_drift.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "theta_drift list length differs from dimension");
    if (g.permutations.empty()) throw Error(ErrorCode::ValidityError, "permutation schedule is empty");
    for (const auto& p : g.permutations)
        if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "permutation length differs from dimension");
    for (const auto& d : g.direction)
        if (std::abs(std::abs(d) - 1.0) > 1e-12)
            throw Error(ErrorCode::ValidityError, "direction coordinates must be unimodular");
    if (!(g.rate > 0.0 && g.rate <= 1.0)) throw Error(ErrorCode::ValidityError, "rate must lie in (0,1]");
    if (g.fixed_modulus && !(*g.fixed_modulus >= 0.0 && *g.fixed_modulus < 1.0))
        throw Error(ErrorCode::ValidityError, "fixed modulus must lie in [0,1)");
    return n;
}

}  // namespace

AutomorphismSequence::AutomorphismSequence(std::vector<PolydiskAutomorphism> elements)
    : source_(std::move(elements))
{
    const auto& v = std::get<0>(source_);
    if (v.empty()) throw Error(ErrorCode::ValidityError, "explicit sequence is empty");
    dimension_ = v.front().dimension();
    for (const auto& phi : v)
        if (phi.dimension() != dimension_)
            throw Error(ErrorCode::DimensionMismatch, "explicit sequence mixes dimensions");
}

AutomorphismSequence::AutomorphismSequence(SequenceGenerator generator)
    : source_(std::move(generator)), dimension_(generator_dimension(std::get<1>(source_)))
{
    // validate the first element eagerly so bad permutations fail early
    (void)at(1);
}

std::int64_t AutomorphismSequence::size() const noexcept
{
    if (const auto* v = std::get_if<0>(&source_)) return std::int64_t(v->size());
    return std::numeric_limits<std::int64_t>::max();
}

PolydiskAutomorphism AutomorphismSequence::at(std::int64_t k) const
{
    if (k < 1 || k > size()) throw Error(ErrorCode::ValidityError, "sequence index out of range: " + std::to_string(k));
    if (const auto* v = std::get_if<0>(&source_)) return (*v)[std::size_t(k - 1)];

    const auto& g = std::get<1>(source_);
    const double kp1 = double(k) + 1.0;
    const double modulus = g.fixed_modulus ? *g.fixed_modulus : 1.0 - g.rate / kp1;
    std::vector<MobiusFactor> f;
    f.reserve(dimension_);
    for (std::size_t j = 0; j < dimension_; ++j) {
        const double drift = g.theta_drift.empty() ? 0.0 : g.theta_drift[j] / kp1;
        f.emplace_back(modulus * g.direction[j], g.theta[j] + drift);
    }
    const auto& p = g.permutations[std::size_t(k % std::int64_t(g.permutations.size()))];
    return PolydiskAutomorphism(p, std::move(f));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::int64_t> cell_of(const PolydiskAutomorphism& phi, double tol)
{
    std::vector<std::int64_t> cell;
    cell.reserve(phi.dimension());
    for (const auto& f : phi.factors())
        cell.push_back(std::int64_t(std::floor((f.theta() + std::numbers::pi) / tol)));
    return cell;
}

double angle_distance(double a, double b) { return std::abs(normalize_angle(a - b)); }

}  // namespace

SubsequenceSelection select_subsequence(const AutomorphismSequence& seq, const SelectionOptions& options)
{
    if (!(options.angle_tol > 0.0)) throw Error(ErrorCode::ValidityError, "angle tolerance must be positive");
    const std::int64_t horizon = std::min(options.horizon, seq.size());
    const std::size_t n = seq.dimension();

    // pigeonhole on permutations; std::map orders keys lexicographically
    std::map<std::vector<std::size_t>, std::vector<std::int64_t>> by_perm;
    for (std::int64_t k = 1; k <= horizon; ++k) by_perm[seq.at(k).permutation()].push_back(k);
    const std::vector<std::int64_t>* fiber = nullptr;
    const std::vector<std::size_t>* perm = nullptr;
    for (const auto& [p, ks] : by_perm) {
        if (!fiber || ks.size() > fiber->size()) {
            fiber = &ks;
            perm = &p;
        }
    }
    if (!fiber || fiber->size() < 2)
        throw Error(ErrorCode::EmptySelection, "no permutation repeats within the horizon");

    // largest angle cell; ties go to the cell seen first
    std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> by_cell;
    std::vector<std::vector<std::int64_t>> cell_order;
    for (auto k : *fiber) {
        auto c = cell_of(seq.at(k), options.angle_tol);
        auto [it, inserted] = by_cell.try_emplace(c);
        if (inserted) cell_order.push_back(c);
        it->second.push_back(k);
    }
    const std::vector<std::int64_t>* best_cell = nullptr;
    const std::vector<std::int64_t>* best = nullptr;
    for (const auto& c : cell_order) {
        const auto& ks = by_cell.at(c);
        if (!best || ks.size() > best->size()) {
            best = &ks;
            best_cell = &c;
        }
    }

    SubsequenceSelection sel;
    sel.indices = *best;
    sel.permutation = *perm;
    sel.angle_cell = *best_cell;
    sel.horizon = horizon;
    sel.angle_tol = options.angle_tol;

    const auto last = seq.at(sel.indices.back());
    double gap = 0.0;
    for (const auto& f : last.factors()) gap = std::max(gap, 1.0 - std::abs(f.alpha()));
    if (!(gap < options.boundary_threshold))
        throw Error(ErrorCode::NoBoundaryConvergence,
                    "1 - |alpha| = " + std::to_string(gap) + " at index " + std::to_string(sel.indices.back()) +
                        " has not fallen below " + std::to_string(options.boundary_threshold));

    std::vector<Complex> sum(n, Complex(0.0, 0.0));
    for (auto k : sel.indices) {
        const auto phi = seq.at(k);
        for (std::size_t j = 0; j < n; ++j) sum[j] += phi.factors()[j].rotation();
    }
    for (std::size_t j = 0; j < n; ++j) {
        sel.limit_angles.push_back(std::arg(sum[j]));
        const Complex a = last.factors()[j].alpha();
        sel.limit_alpha.push_back(a / std::abs(a));
    }

    // phi_k -> e^{i theta_j} alpha_j; the inverse factor at coordinate i is
    // (e^{i theta_q(i)} alpha_q(i), -theta_q(i)), whose limit point is alpha_q(i).
    const auto q = invert_permutation(sel.permutation);
    for (std::size_t j = 0; j < n; ++j) sel.lambda.push_back(std::polar(1.0, sel.limit_angles[j]) * sel.limit_alpha[j]);
    for (std::size_t i = 0; i < n; ++i) sel.gamma.push_back(sel.limit_alpha[q[i]]);
    return sel;
}

bool SubsequenceSelection::contains(const AutomorphismSequence& seq, std::int64_t k) const
{
    if (k < 1 || k > seq.size()) return false;
    if (k <= horizon) return std::binary_search(indices.begin(), indices.end(), k);
    const auto phi = seq.at(k);
    if (phi.permutation() != permutation) return false;
    for (std::size_t j = 0; j < phi.dimension(); ++j)
        if (angle_distance(phi.factors()[j].theta(), limit_angles[j]) > angle_tol) return false;
    return true;
}

std::optional<std::int64_t> SubsequenceSelection::next_member(const AutomorphismSequence& seq, std::int64_t k,
                                                              std::int64_t max_scan) const
{
    if (k <= horizon) {
        auto it = std::lower_bound(indices.begin(), indices.end(), k);
        if (it != indices.end()) return *it;
        k = horizon + 1;
    }
    for (std::int64_t s = 0; s < max_scan && k <= seq.size(); ++s) {
        if (contains(seq, k)) return k;
        if (k == seq.size()) break;
        ++k;
    }
    return std::nullopt;
}

}  // namespace polyuni
