#include "polyuni/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "polyuni/metric.hpp"

namespace polyuni {

CompactProbe EngineConfig::probe() const
{
    const std::size_t n = sequence.dimension();
    return CompactProbe(probe_radius, points_per_dim ? points_per_dim : default_points_per_dim(n), n);
}

double EngineConfig::stage_tolerance(std::size_t j) const { return std::ldexp(epsilon, -int(j)); }
double EngineConfig::interference_budget(std::size_t j) const { return std::ldexp(delta, -int(j)); }

std::vector<std::int64_t> UniversalityRun::indices() const
{
    std::vector<std::int64_t> out;
    for (const auto& s : stages) out.push_back(s.index);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void flatten(const HoloFunction& f, std::vector<HoloFunction>& out)
{
    if (const auto* p = f.as<node::Product>()) {
        for (const auto& c : p->children) flatten(c, out);
    } else {
        out.push_back(f);
    }
}

/// One-variable Schur projection of a factor group depending only on `coord`.
HoloFunction project_group(const std::vector<HoloFunction>& group, std::size_t n, std::size_t coord, std::size_t depth)
{
    const auto restricted = [&](Complex t) {
        std::vector<Complex> z(n, Complex(0.0, 0.0));
        z[coord] = t;
        Complex acc(1.0, 0.0);
        for (const auto& g : group) acc *= g(std::span<const Complex>(z));
        return acc;
    };
    const auto coeffs = taylor_coeffs_of(restricted, 2 * depth);
    return schur_project(coeffs, depth, Complex(1.0, 0.0), n, coord);
}

}  // namespace

GeneratingElement project_to_family(const HoloFunction& f, const TorusPoint& pin, int j, double tol,
                                    const CompactProbe& probe, std::size_t depth)
{
    const std::size_t n = f.dimension();
    if (pin.dimension() != n || probe.dimension() != n)
        throw Error(ErrorCode::DimensionMismatch, "pin, probe and target dimensions differ");

    std::optional<HoloFunction> approximant;
    if (is_inner_tree(f)) {
        approximant = f;
    } else if (n == 1) {
        approximant = schur_project(taylor_coeffs(f, 2 * depth), depth);
    } else {
        std::vector<HoloFunction> parts;
        flatten(f, parts);
        std::map<std::size_t, std::vector<HoloFunction>> groups;
        std::vector<HoloFunction> kept;
        for (const auto& part : parts) {
            if (is_inner_tree(part)) {
                kept.push_back(part);
                continue;
            }
            const auto deps = dependent_coordinates(part);
            if (deps.size() > 1)
                throw Error(ErrorCode::UnsupportedTargetShape,
                            "multivariate target factor depends on several coordinates and is not inner");
            groups[deps.empty() ? 0 : deps.front()].push_back(part);
        }
        for (const auto& [coord, group] : groups) kept.push_back(project_group(group, n, coord, depth));
        approximant = kept.size() == 1 ? kept.front() : HoloFunction::product(std::move(kept));
    }

    const double err = probe_sup(*approximant, f, probe);
    if (err > tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "Schur depth " << depth << " reaches probe error " << err << " above tolerance " << tol;
        throw Error(ErrorCode::ProjectionFailed, msg.str());
    }
    return make_generating_element(j, pin, *approximant);
}

// ---------------------------------------------------------------------------

namespace {

struct Admissibility {
    bool ok = false;
    double worst_prior = 0.0;
    double pullback = 0.0;
};

Admissibility check_index(const EngineState& state, std::size_t j, const GeneratingElement& target, std::int64_t k)
{
    const double budget = state.config.interference_budget(j);
    const auto phi = state.config.sequence.at(k);
    Admissibility a;
    for (const auto& s : state.stages) {
        const double v = probe_sup(HoloFunction::composed(phi, s.factor.product), Complex(1.0, 0.0), state.probe);
        a.worst_prior = std::max(a.worst_prior, v);
        if (v > budget) return a;
    }
    a.pullback = probe_sup(HoloFunction::composed(phi.inverse(), target.product), Complex(1.0, 0.0), state.probe);
    a.ok = a.pullback <= budget;
    return a;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::int64_t choose_stage_index(const EngineState& state, std::size_t j, const GeneratingElement& projected_target,
                                std::int64_t floor)
{
    const auto& seq = state.config.sequence;
    const std::int64_t cap = std::min(state.config.k_max, seq.size());
    double best_prior = INFINITY, best_pullback = INFINITY;

    auto member_at_or_after = [&](std::int64_t k) -> std::optional<std::int64_t> {
        if (k > cap) return std::nullopt;
        auto m = state.selection.next_member(seq, k);
        if (!m || *m > cap) return std::nullopt;
        return m;
    };
    auto admissible = [&](std::int64_t k) {
        const auto a = check_index(state, j, projected_target, k);
        best_prior = std::min(best_prior, a.worst_prior);
        if (a.worst_prior <= state.config.interference_budget(j)) best_pullback = std::min(best_pullback, a.pullback);
        return a.ok;
    };

    // geometric skip: floor, floor+1, floor+3, floor+7, ...
    std::int64_t lo = floor - 1;  // largest index known (or assumed) inadmissible
    std::optional<std::int64_t> hi;
    for (int s = 0; s < 63; ++s) {
        const std::int64_t offset = (std::int64_t(1) << s) - 1;
        if (offset > cap - floor) break;
        const auto m = member_at_or_after(floor + offset);
        if (!m) break;
        if (admissible(*m)) {
            hi = *m;
            break;
        }
        lo = *m;
    }
    if (!hi) {
        throw Error(ErrorCode::SequenceExhausted,
                    "no admissible index for stage " + std::to_string(j) + " up to " + std::to_string(cap) +
                        "; best prior interference " + format_double(best_prior) + ", best pullback deviation " +
                        format_double(best_pullback));
    }

    // bisect for the smallest admissible member in (lo, hi]
    while (*hi - lo > 1) {
        const std::int64_t mid = lo + (*hi - lo) / 2;
        const auto m = member_at_or_after(mid);
        if (!m || *m >= *hi) {
            lo = mid;
            continue;
        }
        if (admissible(*m)) hi = *m;
        else lo = *m;
    }
    return *hi;
}

GeneratingElement build_factor(const EngineState& state, std::size_t j, std::int64_t index,
                               const GeneratingElement& projected_target, int* corrector_index)
{
    const auto& cfg = state.config;
    const auto phi = cfg.sequence.at(index);
    const auto pullback = CompositionOperator(phi, CompositionOperator::Direction::Inverse)(projected_target.product);
    const auto lambda = state.selection.lambda_point();
    const double stage_tol = cfg.stage_tolerance(j) / 2.0;
    const double budget = cfg.interference_budget(j);

    std::vector<PolydiskAutomorphism> earlier;
    for (const auto& s : state.stages) earlier.push_back(cfg.sequence.at(s.index));

    double last_stage = INFINITY, last_retro = INFINITY;
    const int start = std::max(cfg.j_min, int(j) + cfg.j_min);
    for (int jc = start; jc <= cfg.max_corrector_index; ++jc) {
        // the pullback is already inner and closure-continuous, so this is exact
        auto x = project_to_family(pullback, lambda, jc, INFINITY, state.probe, cfg.schur_depth);
        last_stage = probe_sup(HoloFunction::composed(phi, x.product), projected_target.product, state.probe);
        last_retro = 0.0;
        for (const auto& psi : earlier)
            last_retro = std::max(last_retro, probe_sup(HoloFunction::composed(psi, x.product), Complex(1.0, 0.0), state.probe));
        if (last_stage <= stage_tol && last_retro <= budget) {
            if (corrector_index) *corrector_index = jc;
            return x;
        }
    }
    throw Error(ErrorCode::InterferenceBudgetExceeded,
                "stage " + std::to_string(j) + " at index " + std::to_string(index) + ": stage error " +
                    format_double(last_stage) + " (tolerance " + format_double(stage_tol) + "), retroactive interference " +
                    format_double(last_retro) + " (budget " + format_double(budget) + ")");
}

// ---------------------------------------------------------------------------

namespace {

void validate(const EngineConfig& cfg, const CompactProbe& probe)
{
    if (cfg.targets.empty()) throw Error(ErrorCode::ValidityError, "no targets");
    if (!(cfg.epsilon > 0.0) || !(cfg.delta > 0.0)) throw Error(ErrorCode::ValidityError, "tolerances must be positive");
    if (cfg.j_min < 1) throw Error(ErrorCode::ValidityError, "j_min must be at least 1");
    if (cfg.schur_depth < 1) throw Error(ErrorCode::ValidityError, "Schur depth must be at least 1");
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
        const auto& f = cfg.targets[i];
        if (f.dimension() != cfg.sequence.dimension())
            throw Error(ErrorCode::DimensionMismatch, "target " + std::to_string(i + 1) + " has the wrong dimension");
        const double sup = probe_sup(f, Complex(0.0, 0.0), probe);
        if (sup > 1.0 + 1e-12)
            throw Error(ErrorCode::ValidityError,
                        "target " + std::to_string(i + 1) + " leaves the unit ball on the probe (sup " + format_double(sup) + ")");
    }
}

}  // namespace

UniversalityRun run_universality(const EngineConfig& cfg)
{
    const auto probe = cfg.probe();
    validate(cfg, probe);

    UniversalityRun run;
    try {
        run.selection = select_subsequence(cfg.sequence, cfg.selection);
    } catch (const Error& e) {
        run.failure = RunFailure{e.code(), e.what()};
        return run;
    }

    EngineState state{cfg, *run.selection, probe, {}};
    const auto gamma = state.selection.gamma_point();
    try {
        for (std::size_t j = 1; j <= cfg.targets.size(); ++j) {
            const auto& target = cfg.targets[j - 1];
            const int target_index = std::max(cfg.j_min, int(j) + cfg.j_min);
            auto projected = project_to_family(target, gamma, target_index, cfg.stage_tolerance(j) / 4.0, probe,
                                               cfg.schur_depth);

            std::int64_t floor = state.stages.empty() ? state.selection.indices.front() : state.stages.back().index + 1;
            std::optional<GeneratingElement> factor;
            std::int64_t index = 0;
            int escalations = 0;
            for (;; ++escalations) {
                index = choose_stage_index(state, j, projected, floor);
                try {
                    factor = build_factor(state, j, index, projected);
                    break;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::InterferenceBudgetExceeded || escalations >= cfg.max_escalations) throw;
                    floor = index > cfg.k_max / 4 ? cfg.k_max : 4 * index;
                }
            }

            StageRecord rec{.stage = j, .index = index, .projected_target = projected, .factor = *factor};
            const auto phi = cfg.sequence.at(index);
            rec.projection_error = probe_sup(projected.product, target, probe);
            rec.stage_error = probe_sup(HoloFunction::composed(phi, factor->product), projected.product, probe);
            rec.pullback_deviation =
                probe_sup(HoloFunction::composed(phi.inverse(), projected.product), Complex(1.0, 0.0), probe);
            const CompositionOperator T(phi);
            rec.roundtrip_error = probe_sup(T(T.right_inverse()(projected.product)), projected.product, probe);
            for (const auto& s : state.stages) {
                rec.prior_interference.push_back(
                    probe_sup(HoloFunction::composed(phi, s.factor.product), Complex(1.0, 0.0), probe));
                rec.retro_interference.push_back(probe_sup(
                    HoloFunction::composed(cfg.sequence.at(s.index), factor->product), Complex(1.0, 0.0), probe));
            }
            rec.escalations = escalations;
            state.stages.push_back(std::move(rec));
        }
    } catch (const Error& e) {
        run.failure = RunFailure{e.code(), e.what()};
    }

    run.stages = state.stages;
    if (!run.stages.empty()) {
        std::vector<HoloFunction> factors;
        for (const auto& s : run.stages) factors.push_back(s.factor.product);
        run.product = HoloFunction::product(std::move(factors));
        std::vector<HoloFunction> reached(cfg.targets.begin(), cfg.targets.begin() + std::ptrdiff_t(run.stages.size()));
        run.verification = verify_orbit(*run.product, cfg.sequence, reached, probe, run.indices());
    }
    return run;
}

// ---------------------------------------------------------------------------

std::vector<OrbitEntry> verify_orbit(const HoloFunction& x, const AutomorphismSequence& seq,
                                     const std::vector<HoloFunction>& targets, const CompactProbe& probe,
                                     const std::vector<std::int64_t>& indices)
{
    std::vector<OrbitEntry> out(targets.size(), OrbitEntry{0, INFINITY});
    for (auto k : indices) {
        const auto image = HoloFunction::composed(seq.at(k), x);
        for (std::size_t t = 0; t < targets.size(); ++t) {
            const double v = probe_sup(image, targets[t], probe);
            if (v < out[t].value) out[t] = OrbitEntry{k, v};
        }
    }
    return out;
}

std::vector<OrbitEntry> verify_orbit(const HoloFunction& x, const AutomorphismSequence& seq,
                                     const std::vector<HoloFunction>& targets, const CompactProbe& probe, std::int64_t K)
{
    std::vector<std::int64_t> idx;
    for (std::int64_t k = 1; k <= std::min(K, seq.size()); ++k) idx.push_back(k);
    return verify_orbit(x, seq, targets, probe, idx);
}

std::vector<CPoint> random_probe_points(double radius, std::size_t dimension, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<CPoint> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Complex> z(dimension);
        for (auto& c : z) {
            const double rho = radius * std::sqrt(unit(rng));
            c = std::polar(rho, 2.0 * std::numbers::pi * unit(rng));
        }
        pts.emplace_back(std::move(z));
    }
    return pts;
}

}  // namespace polyuni
