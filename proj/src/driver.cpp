#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "polyuni/cli.hpp"
#include "polyuni/config.hpp"
#include "polyuni/dsl.hpp"
#include "polyuni/inner.hpp"
#include "polyuni/metric.hpp"
#include "polyuni/report.hpp"

namespace polyuni {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
}

struct Outcome {
    int exit_code = 0;
    Json result = Json::object();
    std::optional<Json> error;
};

std::vector<std::string> target_names(const RunConfig& cfg)
{
    std::vector<std::string> v;
    for (const auto& t : cfg.targets) v.push_back(t.first);
    return v;
}

Json verification_json(const std::vector<std::string>& names, const std::vector<OrbitEntry>& entries)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < entries.size(); ++i)
        a.push_back(Json{{"target", names[i]}, {"index", entries[i].index}, {"value", entries[i].value}});
    return a;
}

Outcome diagnose_inner(const RunConfig& cfg, const fs::path& out)
{
    const auto f = parse_function(cfg.function, cfg.dimension);
    const auto rep = radial_modulus_report(f, cfg.radii, cfg.angles);
    CsvTable t{{"radius", "max_deviation"}, {}};
    for (std::size_t i = 0; i < rep.radii.size(); ++i) t.add({format_real(rep.radii[i]), format_real(rep.deviation[i])});
    write_file(out / "radial.csv", to_csv(t));
    Outcome o;
    o.result = Json{{"function", to_dsl(f)}, {"angles", cfg.angles}, {"radii", rep.radii}, {"deviation", rep.deviation}};
    return o;
}

Outcome good_inner(const RunConfig& cfg, const fs::path& out)
{
    const auto g = parse_function(cfg.function, cfg.dimension);
    const auto rep = good_inner_trend(g, cfg.radii, cfg.nodes, cfg.clamp, cfg.tolerance);
    CsvTable t{{"radius", "integral", "clamped"}, {}};
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        t.add({format_real(rep.radii[i]), format_real(rep.values[i]), std::to_string(rep.clamped[i])});
    write_file(out / "good_inner.csv", to_csv(t));
    Outcome o;
    o.result = Json{{"function", to_dsl(g)}, {"nodes", rep.nodes},     {"clamp", rep.clamp},
                    {"tolerance", rep.tolerance}, {"radii", rep.radii}, {"values", rep.values},
                    {"clamped", rep.clamped},     {"quadrature_error", rep.quadrature_error},
                    {"passed", rep.passed}};
    return o;
}

/// sup over random points of |x(phi_k(z)) - f(z)| at the index recorded for
/// each target.
Json random_check(const RunConfig& cfg, const HoloFunction& x, const AutomorphismSequence& seq,
                  const std::vector<HoloFunction>& targets, const std::vector<OrbitEntry>& table)
{
    const auto points = random_probe_points(cfg.probe_radius, cfg.dimension, cfg.random_points, cfg.seed);
    Json values = Json::array();
    const auto names = target_names(cfg);
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto xk = HoloFunction::composed(seq.at(table[i].index), x);
        double sup = 0.0;
        for (const auto& z : points) sup = std::max(sup, std::abs(xk(z) - targets[i](z)));
        values.push_back(Json{{"target", names[i]}, {"index", table[i].index}, {"value", sup}});
    }
    return Json{{"points", points.size()}, {"radius", cfg.probe_radius}, {"seed", cfg.seed}, {"values", values}};
}

Outcome construct_universal(const RunConfig& cfg, const fs::path& out, Json& timings)
{
    const auto t0 = Clock::now();
    const EngineConfig ec = cfg.engine_config();
    const UniversalityRun run = run_universality(ec);
    timings["construction_seconds"] = seconds_since(t0);

    Outcome o;
    const auto names = target_names(cfg);
    if (run.selection) o.result["selection"] = selection_json(*run.selection);
    Json stages = Json::array();
    for (const auto& s : run.stages) stages.push_back(stage_json(s));
    o.result["stages"] = stages;
    write_file(out / "stages.csv", to_csv(stages_table(run.stages)));

    if (!run.ok()) {
        o.exit_code = 2;
        o.error = error_json(run.failure->code, run.failure->message);
        return o;
    }

    o.result["x"] = to_dsl(*run.product);
    o.result["verification"] = verification_json(names, run.verification);
    write_file(out / "verification.csv", to_csv(verification_table(names, run.verification)));

    RunConfig replay = cfg;
    replay.mode = Mode::VerifyOrbit;
    replay.x = to_dsl(*run.product);
    replay.indices = run.indices();
    replay.scan = 0;
    o.result["replay_config"] = serialize_config(replay);

    const auto t1 = Clock::now();
    o.result["random_check"] = random_check(cfg, *run.product, ec.sequence, ec.targets, run.verification);
    timings["random_check_seconds"] = seconds_since(t1);
    return o;
}

Outcome verify(const RunConfig& cfg, const fs::path& out)
{
    const auto x = parse_function(cfg.x, cfg.dimension);
    const auto seq = cfg.sequence();
    const auto targets = cfg.target_functions();
    const auto ec = cfg.engine_config();
    const auto table = cfg.indices.empty() ? verify_orbit(x, seq, targets, ec.probe(), cfg.scan)
                                           : verify_orbit(x, seq, targets, ec.probe(), cfg.indices);
    const auto names = target_names(cfg);
    write_file(out / "verification.csv", to_csv(verification_table(names, table)));
    Outcome o;
    o.result = Json{{"x", to_dsl(x)}, {"verification", verification_json(names, table)}};
    return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"polyuni: universal inner functions under polydisk automorphisms"};
    std::string config_path;
    std::string mode_name;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    app.add_option("--config", config_path, "run configuration (INI)")->required();
    app.add_option("--mode", mode_name, "diagnose-inner | good-inner | construct-universal | verify-orbit");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "seed for random verification points");
    app.add_flag("--quiet", quiet, "no console summary");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    const auto t0 = Clock::now();
    const fs::path outp(out_dir);
    Json report{{"format", "polyuni-report"}, {"version", kVersion}};
    Json timings = Json::object();

    auto finish = [&](int code, const Json& result, const std::optional<Json>& error) {
        report["status"] = code == 0 ? "ok" : code == 1 ? "config-error" : "failed";
        report["error"] = error ? *error : Json(nullptr);
        report["result"] = result;
        timings["total_seconds"] = seconds_since(t0);
        try {
            fs::create_directories(outp);
            write_file(outp / "report.json", dump_json(report));
            write_file(outp / "timings.json", dump_json(timings));
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return code == 0 ? 1 : code;
        }
        if (!quiet) {
            out << "status: " << report["status"].get<std::string>() << "\n";
            if (error) out << "error: " << (*error)["code"].get<std::string>() << ": "
                           << (*error)["message"].get<std::string>() << "\n";
            out << "report: " << (outp / "report.json").string() << "\n";
        }
        if (error && quiet) err << (*error)["code"].get<std::string>() << ": " << (*error)["message"].get<std::string>() << "\n";
        return code;
    };

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        if (!mode_name.empty()) cfg.mode = parse_mode(mode_name);
        if (seed) cfg.seed = *seed;
        validate_config(cfg);
        fs::create_directories(outp);
    } catch (const Error& e) {
        return finish(1, Json::object(), error_json(e.code(), e.what()));
    } catch (const std::exception& e) {
        return finish(1, Json::object(), error_json(ErrorCode::ConfigError, e.what()));
    }
    report["mode"] = std::string(to_string(cfg.mode));
    report["seed"] = cfg.seed;
    report["config"] = serialize_config(cfg);

    try {
        Outcome o;
        switch (cfg.mode) {
        case Mode::DiagnoseInner: o = diagnose_inner(cfg, outp); break;
        case Mode::GoodInner: o = good_inner(cfg, outp); break;
        case Mode::ConstructUniversal: o = construct_universal(cfg, outp, timings); break;
        case Mode::VerifyOrbit: o = verify(cfg, outp); break;
        }
        return finish(o.exit_code, o.result, o.error);
    } catch (const Error& e) {
        const bool config = e.code() == ErrorCode::ValidityError || e.code() == ErrorCode::ParseError ||
                            e.code() == ErrorCode::ConfigError;
        return finish(config ? 1 : 2, Json::object(), error_json(e.code(), e.what()));
    }
}

int run_cli(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace polyuni
