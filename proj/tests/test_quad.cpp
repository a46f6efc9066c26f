#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liouville/metric.hpp"
#include "liouville/quad.hpp"
#include "oracles.hpp"

using namespace liouville;

TEST_CASE("adaptive Simpson on known integrals") {
    const QuadratureConfig cfg;
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, oracle::pi, cfg).value ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(adaptive_simpson([](double x) { return std::exp(-x * x); }, -6.0, 6.0, cfg).value ==
          doctest::Approx(std::sqrt(oracle::pi)).epsilon(1e-10));
    CHECK(adaptive_simpson([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, cfg).value ==
          doctest::Approx(oracle::pi / 4).epsilon(1e-10));
    CHECK(adaptive_simpson([](double x) { return x; }, 2.0, 2.0, cfg).value == 0.0);
    // a narrow spike between the initial samples is only seen once the panels resolve it
    auto spike = [](double x) { return std::exp(-1e4 * (x - 0.3337) * (x - 0.3337)); };
    QuadratureConfig fine = cfg;
    fine.initial_panels = 128;
    CHECK(adaptive_simpson(spike, 0.0, 1.0, fine).value == doctest::Approx(std::sqrt(oracle::pi) / 100.0).epsilon(1e-8));
}

TEST_CASE("tolerance failure carries the best estimate") {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 3;
    cfg.initial_panels = 1;
    try {
        adaptive_simpson([](double x) { return std::sqrt(std::abs(std::sin(40.0 * x))); }, 0.0, 3.0, cfg);
        FAIL("expected ToleranceNotMetError");
    } catch (const ToleranceNotMetError& e) {
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.error_estimate > 0.0);
    }
    CHECK_THROWS_AS(adaptive_simpson([](double) { return std::nan(""); }, 0.0, 1.0, QuadratureConfig{}),
                    DomainError);
}

TEST_CASE("quadrature is deterministic") {
    const QuadratureConfig cfg;
    auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x); };
    const double a = adaptive_simpson(f, 0.0, 10.0, cfg).value;
    for (int i = 0; i < 5; ++i) CHECK(adaptive_simpson(f, 0.0, 10.0, cfg).value == a);
}

TEST_CASE("improper integrals by doubling") {
    const QuadratureConfig cfg;
    auto shell = [&](double a, double b) {
        return adaptive_simpson([](double x) { return 1.0 / (1.0 + x * x); }, a, b, cfg);
    };
    CHECK(improper_by_doubling(shell, 1.0, cfg, "atan").value == doctest::Approx(oracle::pi / 2).epsilon(1e-8));
    auto divergent = [&](double a, double b) {
        return adaptive_simpson([](double x) { return 1.0 / (1.0 + x); }, a, b, cfg);
    };
    CHECK_THROWS_AS(improper_by_doubling(divergent, 1.0, cfg, "log"), DivergentIntegralError);
}

TEST_CASE("conformal curve lengths") {
    const QuadratureConfig cfg;
    const ConformalMetric bubble = ConformalMetric::radial(RadialProfile::bubble(1.0));
    CHECK(curve_length(bubble, Segment{{0.0, 0.0}, {1.0, 0.0}}, cfg).value == doctest::Approx(oracle::pi / 2));
    CHECK(curve_length(bubble, Circle{{0.0, 0.0}, 1.0}, cfg).value == doctest::Approx(2.0 * oracle::pi));
    CHECK(curve_length(bubble, Ray{{0.0, 0.0}, 0.7, 1e9}, cfg).value ==
          doctest::Approx(oracle::bubble_ray(1.0, 1e9)).epsilon(1e-8));
    const ConformalMetric flat = ConformalMetric::flat();
    CHECK(curve_length(flat, Circle{{2.0, 1.0}, 3.0}, cfg).value == doctest::Approx(6.0 * oracle::pi));
    CHECK(curve_length(flat, Polyline{{{0.0, 0.0}, {3.0, 0.0}, {3.0, 4.0}}}, cfg).value == doctest::Approx(7.0));
    CHECK(curve_length(flat, HalfEllipse{0.0, 0.0}, cfg).value == doctest::Approx(2.0 * oracle::pi));
    // the same segment through the developing-function metric
    const ConformalMetric dev = ConformalMetric::developing(DevelopingFunction::bubble(1.0));
    CHECK(curve_length(dev, Segment{{0.0, 0.0}, {0.0, 1.0}}, cfg).value == doctest::Approx(oracle::pi / 2));
}

TEST_CASE("horizontal mass of u_t matches the closed form") {
    const QuadratureConfig cfg;
    CHECK(ut_horizontal_mass_exact(0.0, 0.0) == doctest::Approx(oracle::pi));
    for (double t : {0.0, 0.5, 2.0}) {
        for (double y : {0.0, 0.7, 2.0, oracle::pi}) {
            const double exact = ut_horizontal_mass_exact(t, y);
            CHECK(horizontal_mass(ConformalMetric::ut(t), y, cfg).value == doctest::Approx(exact).epsilon(1e-8));
        }
    }
    CHECK(ut_horizontal_mass_exact(0.0, 1.3) == doctest::Approx(oracle::pi));
}

TEST_CASE("areas") {
    const QuadratureConfig cfg;
    const ConformalMetric b = ConformalMetric::radial(RadialProfile::bubble(2.0));
    CHECK(disk_area(b, 0.8, cfg).value == doctest::Approx(oracle::bubble_area(2.0, 0.8)).epsilon(1e-8));
    CHECK(total_area(b, cfg).value == doctest::Approx(4.0 * oracle::pi).epsilon(1e-8));
    CHECK(radial_area(RadialProfile::gaussian_neg(), 0.0, 1.5, cfg).value ==
          doctest::Approx(oracle::gauss_area(1.5)).epsilon(1e-9));
    const ConformalMetric dev = ConformalMetric::developing(
        DevelopingFunction(DevelopingFunction::bubble(1.0).variant(), Similarity{{0.5, 0.5}, 0.0, 1.0}));
    CHECK(total_area(dev, cfg).value == doctest::Approx(4.0 * oracle::pi).epsilon(1e-7));
    CHECK_THROWS_AS(total_area(ConformalMetric::flat(), cfg), DivergentIntegralError);
}

TEST_CASE("config validation") {
    QuadratureConfig c;
    CHECK_NOTHROW(c.validate());
    c.rel_tol = 0.0;
    c.abs_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidConfigError);
    c = {};
    c.improper_cutoff_growth = 1.0;
    CHECK_THROWS_AS(c.validate(), InvalidConfigError);
    c = {};
    c.max_subdivisions = 0;
    CHECK_THROWS_AS(c.validate(), InvalidConfigError);
    c = {};
    c.initial_panels = 0;
    CHECK_THROWS_AS(c.validate(), InvalidConfigError);
}
