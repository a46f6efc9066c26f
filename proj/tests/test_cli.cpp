#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "liouville/descriptor.hpp"
#include "liouville/experiments.hpp"
#include "liouville/parallel.hpp"
#include "liouville/report.hpp"
#include "oracles.hpp"

using namespace liouville;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("liouville_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path config_file(const std::string& name) { return fs::path(LIOUVILLE_CONFIG_DIR) / name; }

}  // namespace

TEST_CASE("registry") {
    const std::set<std::string> want{"ellipse", "ut-diameter", "expexp-2pi", "radial-suite",
                                     "nd-suite", "covering-suite", "subsolution-volume"};
    std::set<std::string> got;
    for (const ExperimentInfo& e : experiment_registry()) got.insert(e.name);
    CHECK(got == want);
    CHECK(find_experiment("ellipse") != nullptr);
    CHECK(find_experiment("nope") == nullptr);
}

TEST_CASE("experiment configs") {
    CHECK_THROWS_AS(make_experiment_config("nope", Json()), InvalidConfigError);
    const ExperimentConfig c = make_experiment_config("ellipse", Json::parse(R"({"quadrature": {"rel_tol": 1e-8}})"));
    CHECK(c.quad.rel_tol == 1e-8);
    auto bad = [](const char* name, const char* doc) { return make_experiment_config(name, Json::parse(doc)); };
    CHECK_THROWS_AS(bad("ellipse", R"({"quadrature": {"rel_tol": -1}})"), InvalidConfigError);
    CHECK_THROWS_AS(bad("ellipse", R"({"quadrature": {"panels": 3}})"), InvalidConfigError);
    CHECK_THROWS_AS(bad("ellipse", R"({"params": {"grid": 3}})"), InvalidConfigError);
    CHECK_THROWS_AS(bad("ellipse", R"({"experiment": "nd-suite"})"), InvalidConfigError);
    CHECK_THROWS_AS(bad("ellipse", R"({"extra": 1})"), InvalidConfigError);
    CHECK_THROWS_AS(bad("ellipse", R"([1, 2])"), InvalidConfigError);
    try {
        const ExperimentConfig cfg = make_experiment_config("ut-diameter", Json::parse(R"({"params": {"grid": {"nx": 1}}})"));
        run_experiment(cfg);
        FAIL("expected InvalidConfigError");
    } catch (const InvalidConfigError& e) {
        CHECK(std::string(e.what()).find("params.") != std::string::npos);
    }
    CHECK_NOTHROW(make_experiment_config("radial-suite", read_json_file(config_file("radial_quick.json").string())));
}

TEST_CASE("descriptors") {
    const DevelopingFunction f = parse_devfn(read_json_file(config_file("bubble_devfn.json").string()));
    CHECK(f.kind() == "mobius");
    CHECK(f.similarity().scale == 2.0);
    CHECK(validate_descriptor(read_json_file(config_file("bubble_devfn.json").string())).type == "devfn");
    CHECK_THROWS_AS(validate_descriptor(read_json_file(config_file("degenerate_mobius.json").string())),
                    InvalidFunctionError);
    const DescriptorSummary pair = validate_descriptor(read_json_file(config_file("bumped_pair.json").string()));
    CHECK(pair.detail.find("primal hypotheses: pass") != std::string::npos);
    CHECK(validate_descriptor(read_json_file(config_file("shifted_profile.json").string())).detail.find("yes") !=
          std::string::npos);
    const ConformalMetric m = parse_metric(read_json_file(config_file("ut_metric.json").string()));
    CHECK(m.u({0.3, 0.2}) == doctest::Approx(oracle::ut_u(1.0, 0.3, 0.2)));

    // round trip
    for (const RadialProfile& p : {RadialProfile::bubble_shifted(2.0, 0.1), RadialProfile::gaussian_neg(),
                                   RadialProfile::bumped(RadialProfile::bubble(1.0), 0.5, 2.0)}) {
        const RadialProfile q = parse_profile(to_json(p));
        CHECK(q.label() == p.label());
        CHECK(q.u(0.7) == p.u(0.7));
    }
    const DevelopingFunction g(OneDim{{0.6, 0.0}, {0.8, 0.0}, 1.0}, Similarity{{1.0, 2.0}, 0.5, 3.0});
    CHECK(SolutionField(parse_devfn(to_json(g))).u(0.1, 0.2) == SolutionField(g).u(0.1, 0.2));

    try {
        parse_profile(Json::parse(R"({"kind": "bubble", "lambda": "x"})"));
        FAIL("expected InvalidConfigError");
    } catch (const InvalidConfigError& e) {
        CHECK(std::string(e.what()).find("profile.lambda") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_devfn(Json::parse(R"({"kind": "zeta"})")), InvalidConfigError);
    CHECK_THROWS_AS(validate_descriptor(Json::parse(R"({"type": "thing"})")), InvalidConfigError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InvalidConfigError);
}

TEST_CASE("report.json carries provenance for every scalar") {
    ExperimentConfig cfg = make_experiment_config("ellipse", Json());
    cfg.out_dir = scratch("ellipse");
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.pass());
    const Json j = read_json_file((cfg.out_dir / "report.json").string());
    CHECK(j.at("experiment") == "ellipse");
    REQUIRE(!j.at("scalars").empty());
    for (const Json& s : j.at("scalars")) {
        const std::string p = s.at("provenance");
        CHECK((p == "paper" || p == "trivial" || p == "derived"));
    }
    for (const std::string& a : res.artifacts) CHECK(fs::exists(cfg.out_dir / a));
    fs::remove_all(cfg.out_dir);
}

TEST_CASE("runs are deterministic") {
    set_worker_count(1);
    ExperimentConfig cfg = make_experiment_config("ellipse", Json());
    cfg.out_dir = scratch("det_a");
    const ExperimentResult first = run_experiment(cfg);
    const fs::path a = cfg.out_dir;
    cfg.out_dir = scratch("det_b");
    run_experiment(cfg);
    REQUIRE(first.artifacts.size() >= 2);
    for (const std::string& name : first.artifacts) {
        INFO(name);
        CHECK(slurp(a / name) == slurp(cfg.out_dir / name));
    }
    fs::remove_all(a);
    fs::remove_all(cfg.out_dir);

    // worker count does not change the numbers
    const ExperimentConfig cov = make_experiment_config("covering-suite", Json::parse(R"({"params": {"lambdas": [0.5]}})"));
    set_worker_count(1);
    const ExperimentResult one = run_experiment(cov);
    set_worker_count(4);
    const ExperimentResult four = run_experiment(cov);
    set_worker_count(1);
    REQUIRE(one.scalars.size() == four.scalars.size());
    for (std::size_t i = 0; i < one.scalars.size(); ++i) {
        INFO(one.scalars[i].name);
        CHECK(std::abs(one.scalars[i].value - four.scalars[i].value) <=
              1e-12 * std::max(1.0, std::abs(one.scalars[i].value)));
    }
}

TEST_CASE("csv and svg writers") {
    const fs::path dir = scratch("writers");
    fs::create_directories(dir);
    write_csv(dir / "t.csv", {"x", "y"}, {{1.0, 2.0}, {0.5, std::nan("")}});
    const std::string csv = slurp(dir / "t.csv");
    CHECK(csv.rfind("x,y\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    write_svg(dir / "t.svg", PlotSpec{"title <&>", "x", "y", true, 1.0},
              {{"a", {1.0, 10.0, 100.0}, {0.0, 1.0, 2.0}}, {"b", {0.0, 1.0}, {1.0, 1.0}}});
    const std::string svg = slurp(dir / "t.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("title &lt;&amp;&gt;") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK_THROWS_AS(write_csv(dir / "bad.csv", {"x"}, {{1.0}, {1.0, 2.0}}), Error);
    fs::remove_all(dir);
}
