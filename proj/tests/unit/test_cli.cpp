#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "susy/cli.hpp"
#include "susy/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace susy;
using namespace susy::cli;

namespace {
const double pi = M_PI;

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "susyprop_test_cli";
    std::filesystem::create_directories(dir);
    return dir / name;
}

int run(const std::string& args)
{
    const int rc = std::system((std::string(SUSYPROP_CLI_PATH) + " " + args + " 2>/dev/null").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::filesystem::path write(const std::string& name, const std::string& text)
{
    const auto p = scratch(name);
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

int column(const ResultTable& t, const std::string& name)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return static_cast<int>(i);
    return -1;
}
} // namespace

TEST_CASE("config parsing")
{
    const auto c = load_config_text("base: box\nchain:\n  - {family: trig_box, n: 1, action: remove}\n");
    CHECK(c.base == BaseKind::Box);
    REQUIRE(c.chain.size() == 1);
    CHECK(c.chain[0].n == 1);
    CHECK(c.x.min == 0.05);
    CHECK(c.x.count == 19);
    CHECK(c.time.wick_part == 0.05);
    CHECK(c.method == MethodChoice::Closed);

    const auto t = load_config_text("base: free\ntransparent: {a: [2.0, 1.0]}\n");
    REQUIRE(t.chain.size() == 2);
    CHECK(t.chain[0].family == "cosh");
    CHECK(t.chain[0].a == 1.0);
    CHECK(t.chain[1].family == "sinh");
    CHECK(build_chain(t)->size() == 2);

    const auto o = load_config_text("base: oscillator\noscillator_pair: 2\ntime: {real: 0.3, wick: 0.1}\n");
    CHECK(o.chain[1].n == 3);
    CHECK(o.time.real_part == 0.3);
    CHECK(!build_chain(load_config_text("base: free\n")).has_value());
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(load_config_text(""), ConfigurationError);
    CHECK_THROWS_AS(load_config_text("base: box\ncolour: red\n"), ConfigurationError);
    CHECK_THROWS_AS(load_config_text("base: moon\n"), ConfigurationError);
    CHECK_THROWS_AS(load_config_text("chain: []\n"), ConfigurationError);
    CHECK_THROWS_AS(load_config_text("base: box\ntransparent: {a: [1]}\n"), ConfigurationError);
    CHECK_THROWS_AS(load_config_text("base: box\ntime: {real: 0, wick: 0}\n"), ConfigurationError);
    CHECK_THROWS_AS(load_config_text("base: box\nwindow: {x: {min: 1, max: 0, count: 3}}\n"), ConfigurationError);
    CHECK_THROWS_AS(load_config_text("base: box\nmethod: guess\n"), ConfigurationError);
    CHECK_THROWS_AS(load_config_text("base: box\nchain:\n  - {family: trig_box, n: 1}\n"), ConfigurationError);
    CHECK_THROWS_AS(load_config_text("base: box\nchain:\n  - {family: bessel, n: 1, action: remove}\n"), ConfigurationError);
    // admissibility: deleting the first excited level alone leaves a node
    const auto bad = load_config_text("base: box\nchain:\n  - {family: trig_box, n: 2, action: remove}\n");
    CHECK_THROWS_AS(build_chain(bad), AdmissibilityError);
}

TEST_CASE("config hash and number formatting")
{
    const auto a = load_config_text("base: free\n"), b = load_config_text("base: free\nseed: 1\n");
    CHECK(config_hash(a).size() == 16);
    CHECK(config_hash(a) != config_hash(b));
    CHECK(config_hash(a) == config_hash(load_config_text("base: free\n")));
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(pi)) == pi);
}

TEST_CASE("potential command")
{
    const auto box = cmd_potential(load_config_text("base: box\nchain:\n  - {family: trig_box, n: 1, action: remove}\n"));
    REQUIRE(box.columns.size() == 2);
    for (const auto& r : box.rows) CHECK(r[1] == doctest::Approx(2 * pi * pi / std::pow(std::sin(pi * r[0]), 2)).epsilon(1e-10));

    const auto pair = cmd_potential(load_config_text("base: oscillator\noscillator_pair: 2\n"));
    for (const auto& r : pair.rows) CHECK(r[1] == doctest::Approx(oscillator_pair_potential(2, r[0])).epsilon(1e-9));

    const auto tr = cmd_potential(load_config_text("base: free\ntransparent: {a: [1, 2]}\nwindow: {x: {min: -20, max: 20, count: 2}}\n"));
    for (const auto& r : tr.rows) CHECK(std::abs(r[1]) <= 1e-8);
    const auto t1 = cmd_potential(load_config_text("base: free\ntransparent: {a: [1]}\nwindow: {x: {min: 0, max: 0, count: 1}}\n"));
    CHECK(t1.rows[0][1] == doctest::Approx(-2.0));
}

TEST_CASE("propagator command and route comparison")
{
    auto cfg = load_config_text("base: box\nchain:\n  - {family: trig_box, n: 1, action: remove}\n"
                                "window: {x: {min: 0.1, max: 0.9, count: 5}}\ncompare_with: theorem\ntolerance: 1.0e-6\n");
    const auto t = cmd_propagator(cfg);
    CHECK(t.rows.size() == 25);
    CHECK(t.get("tolerance_pass") == std::optional<std::string>("true"));
    CHECK(t.get("kernel").has_value());
    const int re = column(t, "re_K");
    for (const auto& r : t.rows) CHECK(r[re] == doctest::Approx(box_removed_ground_kernel(r[0], r[1], ComplexTime::wick(0.05)).real()));

    cfg.method = MethodChoice::Theorem;
    CHECK(cmd_propagator(cfg).get("kernel") != t.get("kernel"));
    CHECK_THROWS_AS(select_kernel(load_config_text("base: oscillator\nchain:\n  - {family: hermite, n: 0, action: remove}\n"),
                                  MethodChoice::Closed),
                    ConfigurationError);
    auto real_time = load_config_text("base: free\ntransparent: {a: [1]}\ntime: {real: 0.5}\nmethod: oracle\n");
    CHECK_THROWS_AS(cmd_propagator(real_time), ConfigurationError);
}

TEST_CASE("green command")
{
    const auto g = cmd_green(load_config_text("base: free\nwindow: {x: {min: 0, max: 1, count: 2}}\nenergy: -4\n"));
    const int re = column(g, "re_G");
    for (const auto& r : g.rows) CHECK(r[re] == doctest::Approx(std::exp(-2 * std::abs(r[0] - r[1])) / 4));
    CHECK_THROWS_AS(cmd_green(load_config_text("base: box\nchain:\n  - {family: trig_box, n: 1, action: remove}\n")),
                    ConfigurationError);
}

TEST_CASE("csv round trip")
{
    const auto t = cmd_propagator(load_config_text("base: oscillator\nwindow: {x: {min: -1, max: 1, count: 3}}\nseed: 5\n"));
    const auto csv = to_csv(t);
    CHECK(csv.find("runtime") == std::string::npos);
    const auto back = read_csv(csv);
    CHECK(back.columns == t.columns);
    CHECK(back.rows == t.rows);
    CHECK(back.nx == 3);
    CHECK(back.get("seed") == std::optional<std::string>("5"));
    CHECK(to_csv(back) == csv);
    const auto j = nlohmann::json::parse(to_json(t, true));
    CHECK(j["metadata"].contains("runtime_seconds"));
    CHECK(!nlohmann::json::parse(to_json(t, false))["metadata"].contains("runtime_seconds"));
}

TEST_CASE("verify suites")
{
    const auto id = cmd_verify("identities", 11);
    CHECK(id.all_pass());
    CHECK(id.checks.size() >= 5);
    const auto pr = cmd_verify("propagators", 11);
    for (const auto& c : pr.checks) CHECK_MESSAGE(c.pass, c.name);
    CHECK_THROWS_AS(cmd_verify("nonsense", 0), ArgumentError);
    const auto j = nlohmann::json::parse(id.to_json(false));
    CHECK(j["all_pass"] == true);
    CHECK(j["seed"] == 11);
}

TEST_CASE("plots")
{
    CHECK(count_local_minima({3, 1, 2, 0, 5}) == 2);
    CHECK(count_local_minima({1, 2, 3}) == 0);
    for (int k : {2, 4}) {
        const auto t = cmd_potential(load_config_text("base: oscillator\noscillator_pair: " + std::to_string(k)
                                                      + "\nwindow: {x: {min: -6, max: 6, count: 601}}\n"));
        const auto p = cmd_plot(t, PlotKind::Line);
        CHECK(p.minima == k);
        CHECK(p.svg.find("<svg") != std::string::npos);
    }
    const auto k = cmd_propagator(load_config_text("base: box\nwindow: {x: {min: 0.1, max: 0.9, count: 7}, y: {min: 0.2, max: 0.8, count: 4}}\n"));
    const auto h = cmd_plot(k, PlotKind::Heatmap);
    CHECK(h.width_cells == 7);
    CHECK(h.height_cells == 4);
    CHECK(h.svg.find("data-nx=\"7\"") != std::string::npos);
    CHECK_THROWS_AS(parse_plot_kind("pie"), ArgumentError);
}

TEST_CASE("command-line tool")
{
    const auto cfg = write("pair.yaml", "base: oscillator\noscillator_pair: 2\nwindow: {x: {min: -1, max: 1, count: 5}}\nseed: 9\n");
    const auto a = scratch("a.csv"), b = scratch("b.csv");
    CHECK(run("propagator --config " + cfg.string() + " --out " + a.string()) == 0);
    CHECK(run("propagator --config " + cfg.string() + " --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("# seed: 9") != std::string::npos);

    CHECK(run("propagator --config " + write("bad.yaml", "base: box\nfoo: 1\n").string()) == 2);
    CHECK(run("propagator --config " + write("adm.yaml", "base: box\nchain:\n  - {family: trig_box, n: 2, action: remove}\n").string()) == 4);
    CHECK(run("propagator --config " + write("tol.yaml", "base: box\nchain:\n  - {family: trig_box, n: 1, action: remove}\n"
                                                        "compare_with: theorem\ntolerance: 1.0e-30\n").string())
          == 3);
    CHECK(run("frobnicate") == 2);
    CHECK(run("verify identities --out " + scratch("v.json").string()) == 0);
    CHECK(run("plot --table " + a.string() + " --kind heatmap --out " + scratch("h.svg").string()) == 0);
    CHECK(slurp(scratch("h.svg")).find("data-ny=\"5\"") != std::string::npos);
}
