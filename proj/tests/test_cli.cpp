#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polyuni/cli.hpp"
#include "polyuni/config.hpp"
#include "polyuni/dsl.hpp"
#include "polyuni/error.hpp"
#include "polyuni/report.hpp"
#include "support.hpp"

using namespace polyuni;
namespace fs = std::filesystem;

namespace {

Error caught(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected an Error");
    return Error(ErrorCode::ValidityError, "");
}

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("polyuni_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text)
{
    std::ofstream f(p, std::ios::binary);
    f << text;
}

int cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    args.push_back("--quiet");
    return run_cli(args, out, err);
}

const char* kN1 = R"([run]
dimension = 1
mode = construct-universal
seed = 7

[sequence]
kind = generator
direction = [1+0i]
rate = 1
theta = [0]
permutations = [1]

[targets]
f1 = const 0.5+0i
f2 = z[1]

[engine]
probe_radius = 0.3
random_points = 2000
)";

HoloFunction random_tree(std::mt19937_64& rng, std::size_t n, int depth)
{
    switch (int(rng() % (depth > 0 ? 6 : 3))) {
    case 0: return HoloFunction::constant(n, testing::disk_point(rng, 1.0));
    case 1: return HoloFunction::coordinate(n, rng() % n);
    case 2: return HoloFunction::blaschke(n, testing::random_factor(rng, 0.95), rng() % n);
    case 3: return random_tree(rng, n, depth - 1) * random_tree(rng, n, depth - 1);
    case 4: return HoloFunction::composed(testing::random_automorphism(rng, n), random_tree(rng, n, depth - 1));
    default: return HoloFunction::power(random_tree(rng, n, depth - 1), 1 + unsigned(rng() % 4));
    }
}

}  // namespace

TEST_CASE("dsl examples")
{
    const auto c = parse_function("const 0.5+0i", 1);
    REQUIRE(c.as<node::Constant>() != nullptr);
    CHECK(c.as<node::Constant>()->value == Complex(0.5, 0.0));

    const auto f = parse_function("blaschke(0.5+0i, 0.0)[1] * z[2]", 2);
    const auto* p = f.as<node::Product>();
    REQUIRE(p != nullptr);
    REQUIRE(p->children.size() == 2);
    CHECK(p->children[0] == HoloFunction::blaschke(2, MobiusFactor(0.5, 0.0), 0));
    CHECK(p->children[1] == HoloFunction::coordinate(2, 1));

    const auto g = parse_function(
        "compose(z[1], auto{p=[2,1], a=[0+0i,0+0i], t=[3.141592653589793,3.141592653589793]})", 2);
    std::mt19937_64 rng(51);
    for (int i = 0; i < 20; ++i) {
        const auto z = testing::random_point(rng, 2, 0.99);
        CHECK(std::abs(g(z) - z.coords[1]) <= 1e-15);
    }

    const auto w = parse_function("  ( z[1]*const 0-1i ) ^3*\n\tblaschke( -0.25+0.5i ,1e-1 )[1]", 1);
    const CPoint z{0.3};
    CHECK(std::abs(w(z) - std::pow(Complex(0.0, -0.3), 3.0) * MobiusFactor(Complex(-0.25, 0.5), 0.1)(0.3)) < 1e-15);
}

TEST_CASE("dsl errors")
{
    const auto e = caught([] { parse_function("z[1] *\n  blaschke(0.5+0i 0.0)[1]", 1); });
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
    CHECK(caught([] { parse_function("z[1] +", 1); }).code() == ErrorCode::ParseError);
    CHECK(caught([] { parse_function("", 1); }).code() == ErrorCode::ParseError);
    CHECK(caught([] { parse_function("const 0.5", 1); }).code() == ErrorCode::ParseError);
    CHECK(caught([] { parse_function("z[3]", 2); }).code() == ErrorCode::ValidityError);
    CHECK(caught([] { parse_function("z[0]", 2); }).code() == ErrorCode::ValidityError);
    CHECK(caught([] { parse_function("const 1+1i", 1); }).code() == ErrorCode::ValidityError);
    CHECK(caught([] { parse_function("blaschke(1+0i, 0)[1]", 1); }).code() == ErrorCode::ValidityError);
    CHECK(caught([] { parse_function("z[1]^0", 1); }).code() == ErrorCode::ValidityError);
    CHECK(caught([] { parse_automorphism("auto{p=[1,1], a=[0+0i,0+0i], t=[0,0]}", 2); }).code() ==
          ErrorCode::ValidityError);
    CHECK(caught([] { parse_automorphism("auto{p=[1], a=[0+0i], t=[0]}", 2); }).code() != ErrorCode::ParseError);
}

TEST_CASE("dsl round trip")
{
    std::mt19937_64 rng(52);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + t % 3;
        const auto f = random_tree(rng, n, 4);
        const auto text = to_dsl(f);
        const auto back = parse_function(text, n);
        CHECK(back == f);
        CHECK(to_dsl(back) == text);
    }
    for (int t = 0; t < 50; ++t) {
        const auto phi = testing::random_automorphism(rng, 1 + t % 3);
        CHECK(parse_automorphism(to_dsl(phi), phi.dimension()) == phi);
    }
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_complex(Complex(0.5, -0.25)) == "0.5-0.25i");
    CHECK(parse_complex("-1e-3+2.5e-1i") == Complex(-1e-3, 0.25));
    CHECK(parse_index_list("[2, 1 ,3]") == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("config parsing")
{
    const auto cfg = parse_config(kN1);
    CHECK(cfg.dimension == 1);
    CHECK(cfg.mode == Mode::ConstructUniversal);
    CHECK(cfg.seed == 7);
    REQUIRE(cfg.targets.size() == 2);
    CHECK(cfg.targets[0].first == "f1");
    CHECK(cfg.targets[1].second == "z[1]");
    CHECK(cfg.probe_radius == 0.3);
    CHECK(cfg.random_points == 2000);
    const auto ec = cfg.engine_config();
    CHECK(ec.targets.size() == 2);
    CHECK(ec.j_min == 12);
    CHECK(ec.sequence.at(3).factors()[0].alpha() == Complex(0.75, 0.0));

    const std::string text = serialize_config(cfg);
    CHECK(serialize_config(parse_config(text)) == text);

    auto with = [](const std::string& extra) { return std::string(kN1) + extra; };
    CHECK(caught([&] { parse_config(with("[bogus]\na = 1\n")); }).code() == ErrorCode::ConfigError);
    CHECK(caught([&] { parse_config(with("[verify]\nwhat = 1\n")); }).code() == ErrorCode::ConfigError);
    CHECK(caught([] { parse_config("[run]\ndimension = x\n"); }).code() == ErrorCode::ConfigError);
    CHECK(caught([] { parse_config("[run]\nmode = fly\n"); }).code() == ErrorCode::ConfigError);
    CHECK(caught([] { parse_config("[run\n"); }).code() == ErrorCode::ConfigError);
    CHECK(caught([] { load_config("/nonexistent/polyuni.ini"); }).code() == ErrorCode::ConfigNotFound);

    // ball violations are rejected while loading
    std::string big = kN1;
    big.replace(big.find("const 0.5+0i"), 12, "const 0.9+0.9i");
    CHECK(caught([&] { parse_config(big); }).code() == ErrorCode::ValidityError);

    const auto expl = parse_config(
        "[run]\ndimension = 2\nmode = construct-universal\n[sequence]\nkind = explicit\n"
        "automorphisms = auto{p=[2,1], a=[0.5+0i,0+0.5i], t=[0,1]}; auto{p=[1,2], a=[0+0i,0+0i], t=[3,3]}\n"
        "[targets]\nf = z[1]\n");
    CHECK(expl.sequence().size() == 2);
    CHECK(serialize_config(parse_config(serialize_config(expl))) == serialize_config(expl));
}

TEST_CASE("json and csv writers")
{
    Json j{{"a", 0.1}, {"b", 3}, {"c", Json::array({1.0, -2.5e-300})}, {"s", "x\"y"}, {"n", nullptr}};
    const auto text = dump_json(j);
    CHECK(text.find("\"a\": 0.10000000000000001") != std::string::npos);
    CHECK(text.find("\"b\": 3") != std::string::npos);
    CHECK(text.find("[1.0, -2.5e-300]") != std::string::npos);
    CHECK(text.find("\"x\\\"y\"") != std::string::npos);
    const auto back = Json::parse(text);
    CHECK(back["a"].get<double>() == 0.1);
    CHECK(dump_json(Json{{"v", std::nan("")}}).find("null") != std::string::npos);

    CsvTable t{{"name", "value"}, {}};
    t.add({"plain", "1"});
    t.add({"with,comma", "say \"hi\""});
    t.add({"line\nbreak", ""});
    CHECK(to_csv(t) == "name,value\nplain,1\n\"with,comma\",\"say \"\"hi\"\"\"\n\"line\nbreak\",\n");
}

TEST_CASE("good-inner mode")
{
    const auto dir = scratch("good");
    spit(dir / "g.ini", "[run]\ndimension = 1\nmode = good-inner\n[diagnostics]\nfunction = z[1]^5\nradii = [0.9, 0.99, 0.999]\n");
    REQUIRE(cli({"--config", (dir / "g.ini").string(), "--out", (dir / "out").string()}) == 0);
    std::istringstream csv(slurp(dir / "out" / "good_inner.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "radius,integral,clamped");
    int rows = 0;
    while (std::getline(csv, line)) {
        const auto a = line.find(','), b = line.rfind(',');
        const double r = std::stod(line.substr(0, a));
        const double v = std::stod(line.substr(a + 1, b - a - 1));
        CHECK(std::abs(v - 5 * std::log(r)) <= 1e-9);
        ++rows;
    }
    CHECK(rows == 3);
    const auto report = Json::parse(slurp(dir / "out" / "report.json"));
    CHECK(report["status"] == "ok");
    CHECK(report["result"]["passed"] == true);

    REQUIRE(cli({"--config", (dir / "g.ini").string(), "--out", (dir / "rad").string(), "--mode", "diagnose-inner"}) == 0);
    CHECK(slurp(dir / "rad" / "radial.csv").rfind("radius,max_deviation\n0.90000000000000002,", 0) == 0);
}

TEST_CASE("missing config")
{
    const auto dir = scratch("missing");
    CHECK(cli({"--config", (dir / "nope.ini").string(), "--out", dir.string()}) == 1);
    const auto report = Json::parse(slurp(dir / "report.json"));
    CHECK(report["error"]["code"] == "ConfigNotFound");
    CHECK(report["status"] == "config-error");
    CHECK(cli({"--out", dir.string()}) == 1);
    CHECK(cli({"--config", (dir / "nope.ini").string(), "--bogus"}) == 1);
}

TEST_CASE("construct-universal, replay and determinism")
{
    const auto dir = scratch("construct");
    spit(dir / "n1.ini", kN1);
    REQUIRE(cli({"--config", (dir / "n1.ini").string(), "--out", (dir / "a").string()}) == 0);
    REQUIRE(cli({"--config", (dir / "n1.ini").string(), "--out", (dir / "b").string()}) == 0);
    for (const char* f : {"report.json", "stages.csv", "verification.csv"})
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));

    const auto report = Json::parse(slurp(dir / "a" / "report.json"));
    CHECK(report["status"] == "ok");
    CHECK(report["version"] == kVersion);
    REQUIRE(report["result"]["stages"].size() == 2);
    for (const auto& v : report["result"]["verification"]) CHECK(v["value"].get<double>() <= 0.06);
    for (const auto& v : report["result"]["random_check"]["values"]) CHECK(v["value"].get<double>() <= 0.06);

    spit(dir / "replay.ini", report["result"]["replay_config"].get<std::string>());
    REQUIRE(cli({"--config", (dir / "replay.ini").string(), "--out", (dir / "r").string()}) == 0);
    const auto replay = Json::parse(slurp(dir / "r" / "report.json"));
    REQUIRE(replay["result"]["verification"].size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& a = report["result"]["verification"][i];
        const auto& b = replay["result"]["verification"][i];
        CHECK(a["index"] == b["index"]);
        CHECK(std::abs(a["value"].get<double>() - b["value"].get<double>()) <= 1e-12);
    }

    // the seed moves only the random check
    REQUIRE(cli({"--config", (dir / "n1.ini").string(), "--out", (dir / "s").string(), "--seed", "99"}) == 0);
    CHECK(slurp(dir / "s" / "stages.csv") == slurp(dir / "a" / "stages.csv"));
    const auto seeded = Json::parse(slurp(dir / "s" / "report.json"));
    CHECK(seeded["result"]["x"] == report["result"]["x"]);
    CHECK(seeded["result"]["random_check"]["values"] != report["result"]["random_check"]["values"]);
}

TEST_CASE("engine failure writes a partial report")
{
    const auto dir = scratch("fail");
    std::string text = kN1;
    text.replace(text.find("rate = 1"), 8, "rate = 1\nfixed_modulus = 0.5");
    spit(dir / "bad.ini", text);
    CHECK(cli({"--config", (dir / "bad.ini").string(), "--out", dir.string()}) == 2);
    const auto report = Json::parse(slurp(dir / "report.json"));
    CHECK(report["status"] == "failed");
    CHECK(report["error"]["code"] == "NoBoundaryConvergence");
    CHECK(report["result"]["stages"].empty());
}
