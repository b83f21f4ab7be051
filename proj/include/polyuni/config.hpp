#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyuni/automorphism.hpp"
#include "polyuni/engine.hpp"
#include "polyuni/holo.hpp"

namespace polyuni {

enum class Mode { DiagnoseInner, GoodInner, ConstructUniversal, VerifyOrbit };

std::string_view to_string(Mode m) noexcept;
Mode parse_mode(std::string_view name);

/// Parsed form of the INI-style run configuration. Field names are listed in
/// docs/format.md.
struct RunConfig {
    std::size_t dimension = 1;
    Mode mode = Mode::ConstructUniversal;
    std::uint64_t seed = 1;

    // [sequence]
    std::string sequence_kind = "generator";  // or "explicit"
    SequenceGenerator generator;
    std::vector<std::string> explicit_automorphisms;

    // [targets], in file order
    std::vector<std::pair<std::string, std::string>> targets;

    // [engine]
    double probe_radius = 0.3;
    std::size_t points_per_dim = 0;
    double epsilon = 0.05;
    double delta = 0.01;
    int j_min = 12;
    std::int64_t k_max = 1'000'000'000'000'000;
    std::size_t schur_depth = 16;
    int max_escalations = 5;
    int max_corrector_index = 48;
    std::int64_t selection_horizon = 1000;
    double angle_tol = 0.05;
    double boundary_threshold = 0.01;
    std::size_t random_points = 10000;

    // [diagnostics]
    std::string function;
    std::vector<double> radii{0.9, 0.99, 0.999};
    std::size_t nodes = 512;
    std::size_t angles = 256;
    double clamp = 40.0;
    double tolerance = 0.02;

    // [verify]
    std::string x;
    std::vector<std::int64_t> indices;
    std::int64_t scan = 0;

    AutomorphismSequence sequence() const;
    std::vector<HoloFunction> target_functions() const;
    EngineConfig engine_config() const;
};

/// Throws ConfigNotFound, ConfigError, ParseError or ValidityError.
RunConfig load_config(const std::string& path);
/// Mode-dependent checks: sequence and targets build, targets stay in the
/// closed unit ball on the probe, the diagnostic function parses.
void validate_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& text);

/// Normal form: every key, fixed order, 17-digit reals.
std::string serialize_config(const RunConfig& cfg);

}  // namespace polyuni
