#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyuni/automorphism.hpp"
#include "polyuni/error.hpp"
#include "polyuni/holo.hpp"
#include "polyuni/inner.hpp"

namespace polyuni {

struct EngineConfig {
    AutomorphismSequence sequence;
    std::vector<HoloFunction> targets;
    double probe_radius = 0.3;
    std::size_t points_per_dim = 0;  // 0 selects default_points_per_dim(n)
    double epsilon = 0.05;           // stage tolerance eps_j = epsilon / 2^j
    double delta = 0.01;             // interference budget delta * 2^{-j}
    int j_min = 12;
    std::int64_t k_max = 1'000'000'000'000'000;  // largest index searched
    std::size_t schur_depth = 16;
    int max_escalations = 5;
    int max_corrector_index = 48;
    SelectionOptions selection{};

    CompactProbe probe() const;
    double stage_tolerance(std::size_t j) const;
    double interference_budget(std::size_t j) const;
};

/// Approximates f by an inner, closure-continuous tree A (exactly A = f when
/// f already is one, otherwise per-variable Schur projection) and pins A*Psi
/// to 1 at `pin`. Throws ProjectionFailed when probe_sup(A, f) > tol.
GeneratingElement project_to_family(const HoloFunction& f, const TorusPoint& pin, int j, double tol,
                                    const CompactProbe& probe, std::size_t depth = 16);

struct StageRecord {
    std::size_t stage = 0;
    std::int64_t index = 0;  // n_j
    GeneratingElement projected_target;  // pin gamma
    GeneratingElement factor;            // pin lambda
    double projection_error = 0.0;       // probe_sup(target projection, target)
    double stage_error = 0.0;            // probe_sup(x_j o phi_{n_j}, projected target)
    double pullback_deviation = 0.0;     // probe_sup(projected target o phi_{n_j}^{-1}, 1)
    double roundtrip_error = 0.0;        // probe_sup(T R f, f) for the projected target
    std::vector<double> prior_interference = {};  // probe_sup(x_i o phi_{n_j}, 1), i < j
    std::vector<double> retro_interference = {};  // probe_sup(x_j o phi_{n_m}, 1), m < j
    int escalations = 0;
};

struct OrbitEntry {
    std::int64_t index = 0;
    double value = 0.0;
};

struct RunFailure {
    ErrorCode code;
    std::string message;
};

struct UniversalityRun {
    std::optional<SubsequenceSelection> selection;
    std::vector<StageRecord> stages;
    std::optional<HoloFunction> product;
    std::vector<OrbitEntry> verification;
    std::optional<RunFailure> failure;

    bool ok() const noexcept { return !failure.has_value(); }
    std::vector<std::int64_t> indices() const;
};

/// State threaded through the stages.
struct EngineState {
    const EngineConfig& config;
    SubsequenceSelection selection;
    CompactProbe probe;
    std::vector<StageRecord> stages;
};

/// Smallest admissible n_j >= floor found by geometric skip then bisection.
/// Throws SequenceExhausted.
std::int64_t choose_stage_index(const EngineState& state, std::size_t j, const GeneratingElement& projected_target,
                                std::int64_t floor);

/// Builds x_j from R_{n_j} of the projected target, escalating the corrector
/// index until the stage error fits. Throws InterferenceBudgetExceeded.
GeneratingElement build_factor(const EngineState& state, std::size_t j, std::int64_t index,
                               const GeneratingElement& projected_target, int* corrector_index = nullptr);

/// Throws ValidityError for invalid configs; every later failure is
/// recorded in the returned run.
UniversalityRun run_universality(const EngineConfig& config);

/// min over the given indices of probe_sup(x o phi_k, f) for every target.
std::vector<OrbitEntry> verify_orbit(const HoloFunction& x, const AutomorphismSequence& seq,
                                     const std::vector<HoloFunction>& targets, const CompactProbe& probe,
                                     const std::vector<std::int64_t>& indices);

/// Same, over k = 1..K.
std::vector<OrbitEntry> verify_orbit(const HoloFunction& x, const AutomorphismSequence& seq,
                                     const std::vector<HoloFunction>& targets, const CompactProbe& probe,
                                     std::int64_t K);

/// Uniform samples from the closed sub-polydisk of the given radius.
std::vector<CPoint> random_probe_points(double radius, std::size_t dimension, std::size_t count, std::uint64_t seed);

}  // namespace polyuni
