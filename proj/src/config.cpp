#include "polyuni/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "polyuni/dsl.hpp"
#include "polyuni/error.hpp"

namespace polyuni {

namespace pt = boost::property_tree;

std::string_view to_string(Mode m) noexcept
{
    switch (m) {
    case Mode::DiagnoseInner: return "diagnose-inner";
    case Mode::GoodInner: return "good-inner";
    case Mode::ConstructUniversal: return "construct-universal";
    case Mode::VerifyOrbit: return "verify-orbit";
    }
    return "unknown";
}

Mode parse_mode(std::string_view name)
{
    for (Mode m : {Mode::DiagnoseInner, Mode::GoodInner, Mode::ConstructUniversal, Mode::VerifyOrbit})
        if (to_string(m) == name) return m;
    throw Error(ErrorCode::ConfigError, "unknown mode '" + std::string(name) + "'");
}

namespace {

const std::map<std::string, std::set<std::string>>& schema()
{
    static const std::map<std::string, std::set<std::string>> s{
        {"run", {"dimension", "mode", "seed"}},
        {"sequence",
         {"kind", "direction", "rate", "fixed_modulus", "theta", "theta_drift", "permutations", "automorphisms"}},
        {"targets", {}},
        {"engine",
         {"probe_radius", "points_per_dim", "epsilon", "delta", "j_min", "k_max", "schur_depth", "max_escalations",
          "max_corrector_index", "selection_horizon", "angle_tol", "boundary_threshold", "random_points"}},
        {"diagnostics", {"function", "radii", "nodes", "angles", "clamp", "tolerance"}},
        {"verify", {"x", "indices", "scan"}},
    };
    return s;
}

template <typename T>
T number(const std::string& key, const std::string& text)
{
    T v{};
    const char* first = text.data();
    const char* last = first + text.size();
    while (first < last && *first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw Error(ErrorCode::ConfigError, "key '" + key + "': cannot read '" + text + "' as a number");
    return v;
}

std::vector<std::string> split_semicolons(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ';'))
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
    return out;
}

template <typename Fn>
auto in_key(const std::string& key, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.code(), "key '" + key + "': " + e.what());
    }
}

}  // namespace

RunConfig parse_config(const std::string& text)
{
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorCode::ConfigError, e.what());
    }

    RunConfig cfg;
    for (const auto& [section, body] : tree) {
        auto it = schema().find(section);
        if (it == schema().end()) throw Error(ErrorCode::ConfigError, "unknown section [" + section + "]");
        if (body.data().size() && body.empty()) throw Error(ErrorCode::ConfigError, "key '" + section + "' outside a section");
        for (const auto& [key, node] : body) {
            const std::string full = section + "." + key;
            const std::string value = node.data();
            if (section == "targets") {
                cfg.targets.emplace_back(key, value);
                continue;
            }
            if (!it->second.count(key)) throw Error(ErrorCode::ConfigError, "unknown key '" + full + "'");
            in_key(full, [&] {
                if (full == "run.dimension") cfg.dimension = number<std::size_t>(full, value);
                else if (full == "run.mode") cfg.mode = parse_mode(value);
                else if (full == "run.seed") cfg.seed = number<std::uint64_t>(full, value);
                else if (full == "sequence.kind") cfg.sequence_kind = value;
                else if (full == "sequence.direction") cfg.generator.direction = parse_complex_list(value);
                else if (full == "sequence.rate") cfg.generator.rate = number<double>(full, value);
                else if (full == "sequence.fixed_modulus") cfg.generator.fixed_modulus = number<double>(full, value);
                else if (full == "sequence.theta") cfg.generator.theta = parse_real_list(value);
                else if (full == "sequence.theta_drift") cfg.generator.theta_drift = parse_real_list(value);
                else if (full == "sequence.permutations") {
                    cfg.generator.permutations.clear();
                    for (const auto& p : split_semicolons(value)) cfg.generator.permutations.push_back(parse_index_list(p));
                } else if (full == "sequence.automorphisms") cfg.explicit_automorphisms = split_semicolons(value);
                else if (full == "engine.probe_radius") cfg.probe_radius = number<double>(full, value);
                else if (full == "engine.points_per_dim") cfg.points_per_dim = number<std::size_t>(full, value);
                else if (full == "engine.epsilon") cfg.epsilon = number<double>(full, value);
                else if (full == "engine.delta") cfg.delta = number<double>(full, value);
                else if (full == "engine.j_min") cfg.j_min = number<int>(full, value);
                else if (full == "engine.k_max") cfg.k_max = number<std::int64_t>(full, value);
                else if (full == "engine.schur_depth") cfg.schur_depth = number<std::size_t>(full, value);
                else if (full == "engine.max_escalations") cfg.max_escalations = number<int>(full, value);
                else if (full == "engine.max_corrector_index") cfg.max_corrector_index = number<int>(full, value);
                else if (full == "engine.selection_horizon") cfg.selection_horizon = number<std::int64_t>(full, value);
                else if (full == "engine.angle_tol") cfg.angle_tol = number<double>(full, value);
                else if (full == "engine.boundary_threshold") cfg.boundary_threshold = number<double>(full, value);
                else if (full == "engine.random_points") cfg.random_points = number<std::size_t>(full, value);
                else if (full == "diagnostics.function") cfg.function = value;
                else if (full == "diagnostics.radii") cfg.radii = parse_real_list(value);
                else if (full == "diagnostics.nodes") cfg.nodes = number<std::size_t>(full, value);
                else if (full == "diagnostics.angles") cfg.angles = number<std::size_t>(full, value);
                else if (full == "diagnostics.clamp") cfg.clamp = number<double>(full, value);
                else if (full == "diagnostics.tolerance") cfg.tolerance = number<double>(full, value);
                else if (full == "verify.x") cfg.x = value;
                else if (full == "verify.indices") cfg.indices = parse_integer_list(value);
                else if (full == "verify.scan") cfg.scan = number<std::int64_t>(full, value);
            });
        }
    }

    if (cfg.dimension == 0) throw Error(ErrorCode::ConfigError, "run.dimension must be positive");
    if (cfg.sequence_kind != "generator" && cfg.sequence_kind != "explicit")
        throw Error(ErrorCode::ConfigError, "sequence.kind must be 'generator' or 'explicit'");
    if (cfg.sequence_kind == "generator") {
        auto& g = cfg.generator;
        if (g.direction.empty()) g.direction.assign(cfg.dimension, Complex(1.0, 0.0));
        if (g.theta.empty()) g.theta.assign(cfg.dimension, 0.0);
        if (g.permutations.empty()) {
            std::vector<std::size_t> id(cfg.dimension);
            for (std::size_t j = 0; j < cfg.dimension; ++j) id[j] = j;
            g.permutations.push_back(id);
        }
    }

    validate_config(cfg);
    return cfg;
}

void validate_config(const RunConfig& cfg)
{
    if (cfg.mode == Mode::ConstructUniversal || cfg.mode == Mode::VerifyOrbit) {
        const auto seq = in_key("sequence", [&] { return cfg.sequence(); });
        if (seq.dimension() != cfg.dimension)
            throw Error(ErrorCode::ConfigError, "sequence dimension differs from run.dimension");
        if (cfg.targets.empty()) throw Error(ErrorCode::ConfigError, "section [targets] is empty");
        const auto targets = cfg.target_functions();
        const CompactProbe probe(cfg.probe_radius,
                                 cfg.points_per_dim ? cfg.points_per_dim : default_points_per_dim(cfg.dimension),
                                 cfg.dimension);
        for (std::size_t i = 0; i < targets.size(); ++i)
            for (const auto& z : probe.grid())
                if (std::abs(targets[i](z)) > 1.0 + 1e-12)
                    throw Error(ErrorCode::ValidityError, "target '" + cfg.targets[i].first + "' leaves the unit ball");
        if (cfg.mode == Mode::VerifyOrbit) {
            if (cfg.x.empty()) throw Error(ErrorCode::ConfigError, "verify-orbit needs verify.x");
            (void)in_key("verify.x", [&] { return parse_function(cfg.x, cfg.dimension); });
            if (cfg.indices.empty() && cfg.scan <= 0)
                throw Error(ErrorCode::ConfigError, "verify-orbit needs verify.indices or verify.scan");
        }
    } else {
        if (cfg.function.empty()) throw Error(ErrorCode::ConfigError, "diagnostics.function is required");
        (void)in_key("diagnostics.function", [&] { return parse_function(cfg.function, cfg.dimension); });
    }
}

RunConfig load_config(const std::string& path)
{
    if (!std::filesystem::is_regular_file(path))
        throw Error(ErrorCode::ConfigNotFound, "config file '" + path + "' not found");
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

AutomorphismSequence RunConfig::sequence() const
{
    if (sequence_kind == "explicit") {
        std::vector<PolydiskAutomorphism> v;
        for (const auto& s : explicit_automorphisms) v.push_back(parse_automorphism(s, dimension));
        return AutomorphismSequence(std::move(v));
    }
    return AutomorphismSequence(generator);
}

std::vector<HoloFunction> RunConfig::target_functions() const
{
    std::vector<HoloFunction> out;
    for (const auto& [name, text] : targets)
        out.push_back(in_key("targets." + name, [&] { return parse_function(text, dimension); }));
    return out;
}

EngineConfig RunConfig::engine_config() const
{
    EngineConfig e{sequence(), target_functions()};
    e.probe_radius = probe_radius;
    e.points_per_dim = points_per_dim;
    e.epsilon = epsilon;
    e.delta = delta;
    e.j_min = j_min;
    e.k_max = k_max;
    e.schur_depth = schur_depth;
    e.max_escalations = max_escalations;
    e.max_corrector_index = max_corrector_index;
    e.selection.horizon = selection_horizon;
    e.selection.angle_tol = angle_tol;
    e.selection.boundary_threshold = boundary_threshold;
    return e;
}

namespace {

template <typename T, typename Fmt>
std::string bracketed(const std::vector<T>& v, Fmt fmt)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s + "]";
}

}  // namespace

std::string serialize_config(const RunConfig& c)
{
    std::ostringstream o;
    const auto num = [](auto v) { return std::to_string(v); };
    o << "[run]\n"
      << "dimension = " << c.dimension << "\n"
      << "mode = " << to_string(c.mode) << "\n"
      << "seed = " << c.seed << "\n\n";

    o << "[sequence]\n" << "kind = " << c.sequence_kind << "\n";
    if (c.sequence_kind == "explicit") {
        o << "automorphisms = ";
        for (std::size_t i = 0; i < c.explicit_automorphisms.size(); ++i)
            o << (i ? "; " : "") << to_dsl(parse_automorphism(c.explicit_automorphisms[i], c.dimension));
        o << "\n";
    } else {
        const auto& g = c.generator;
        o << "direction = " << bracketed(g.direction, format_complex) << "\n"
          << "rate = " << format_real(g.rate) << "\n";
        if (g.fixed_modulus) o << "fixed_modulus = " << format_real(*g.fixed_modulus) << "\n";
        o << "theta = " << bracketed(g.theta, format_real) << "\n";
        if (!g.theta_drift.empty()) o << "theta_drift = " << bracketed(g.theta_drift, format_real) << "\n";
        o << "permutations = ";
        for (std::size_t i = 0; i < g.permutations.size(); ++i)
            o << (i ? "; " : "") << bracketed(g.permutations[i], [](std::size_t v) { return std::to_string(v + 1); });
        o << "\n";
    }
    o << "\n[targets]\n";
    for (const auto& [name, text] : c.targets) o << name << " = " << to_dsl(parse_function(text, c.dimension)) << "\n";

    o << "\n[engine]\n"
      << "probe_radius = " << format_real(c.probe_radius) << "\n"
      << "points_per_dim = " << c.points_per_dim << "\n"
      << "epsilon = " << format_real(c.epsilon) << "\n"
      << "delta = " << format_real(c.delta) << "\n"
      << "j_min = " << c.j_min << "\n"
      << "k_max = " << c.k_max << "\n"
      << "schur_depth = " << c.schur_depth << "\n"
      << "max_escalations = " << c.max_escalations << "\n"
      << "max_corrector_index = " << c.max_corrector_index << "\n"
      << "selection_horizon = " << c.selection_horizon << "\n"
      << "angle_tol = " << format_real(c.angle_tol) << "\n"
      << "boundary_threshold = " << format_real(c.boundary_threshold) << "\n"
      << "random_points = " << c.random_points << "\n";

    o << "\n[diagnostics]\n";
    if (!c.function.empty()) o << "function = " << to_dsl(parse_function(c.function, c.dimension)) << "\n";
    o << "radii = " << bracketed(c.radii, format_real) << "\n"
      << "nodes = " << c.nodes << "\n"
      << "angles = " << c.angles << "\n"
      << "clamp = " << format_real(c.clamp) << "\n"
      << "tolerance = " << format_real(c.tolerance) << "\n";

    o << "\n[verify]\n";
    if (!c.x.empty()) o << "x = " << to_dsl(parse_function(c.x, c.dimension)) << "\n";
    if (!c.indices.empty()) o << "indices = " << bracketed(c.indices, [&](std::int64_t v) { return num(v); }) << "\n";
    o << "scan = " << c.scan << "\n";
    return o.str();
}

}  // namespace polyuni
