#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liouville/geodesic.hpp"
#include "liouville/radial.hpp"
#include "oracles.hpp"

using namespace liouville;

TEST_CASE("sphere lower bound on simple examples") {
    const ConformalMetric b = ConformalMetric::developing(DevelopingFunction::bubble(1.0));
    CHECK(sphere_lower_bound(b, {0.0, 0.0}, {1.0, 0.0}) == doctest::Approx(oracle::pi / 2));
    CHECK(sphere_lower_bound(b, {-1.0, 0.0}, {1.0, 0.0}) == doctest::Approx(oracle::pi));
    CHECK(sphere_lower_bound(b, {1.0, 0.0}, {1.0, 0.0}) == 0.0);
    // f = 1 + e^z: f(0) = 2, f(i pi) = 0
    const ConformalMetric u1 = ConformalMetric::developing(DevelopingFunction(AffineExp{1.0}));
    CHECK(sphere_lower_bound(u1, {0.0, 0.0}, {0.0, oracle::pi}) ==
          doctest::Approx(oracle::pi - std::atan(4.0 / 3.0)));
    // e^z is 2 pi i periodic
    const ConformalMetric u0 = ConformalMetric::developing(DevelopingFunction(AffineExp{0.0}));
    CHECK(sphere_lower_bound(u0, {0.3, -oracle::pi}, {0.3, oracle::pi}) == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(sphere_lower_bound(ConformalMetric::flat(), {0.0, 0.0}, {1.0, 0.0}), PreconditionError);
}

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS((GridSpec{Box{0, 1, 0, 1}, 1, 5, 16}.validate()), InvalidConfigError);
    CHECK_THROWS_AS((GridSpec{Box{0, 1, 0, 1}, 5, 5, 12}.validate()), InvalidConfigError);
    CHECK_THROWS_AS((GridSpec{Box{1, 1, 0, 1}, 5, 5, 8}.validate()), InvalidConfigError);
    CHECK_NOTHROW((GridSpec{Box{0, 1, 0, 1}, 5, 5, 8}.validate()));
}

TEST_CASE("grid path on the bubble") {
    const QuadratureConfig cfg;
    const ConformalMetric b = ConformalMetric::radial(RadialProfile::bubble(1.0));
    const GridSpec g{Box{-3.0, 3.0, -3.0, 3.0}, 121, 121, 16};
    const GridPath gp = grid_distance_upper(b, {-1.0, 0.0}, {1.0, 0.0}, g, cfg);
    CHECK(gp.length >= oracle::pi - 1e-9);
    CHECK(gp.length <= 1.02 * oracle::pi);
    CHECK(gp.witness.points.front() == Point2{-1.0, 0.0});
    CHECK(gp.witness.points.back() == Point2{1.0, 0.0});
    // off-node endpoints
    const GridPath off = grid_distance_upper(b, {-0.512, 0.013}, {0.77, -0.31}, g, cfg);
    const ConformalMetric d = ConformalMetric::developing(DevelopingFunction::bubble(1.0));
    const double lower = sphere_lower_bound(d, {-0.512, 0.013}, {0.77, -0.31});
    CHECK(off.length >= lower - 1e-9);
    CHECK(off.length <= 1.02 * lower);

    CHECK(grid_distance_upper(b, {0.5, 0.5}, {0.5, 0.5}, g, cfg).length == 0.0);
    CHECK_THROWS_AS(grid_distance_upper(b, {0.0, 0.0}, {4.0, 0.0}, g, cfg), DomainError);
}

TEST_CASE("a nested finer grid never does worse") {
    // endpoints sit on nodes of every grid below
    const QuadratureConfig cfg;
    const ConformalMetric m = ConformalMetric::ut(1.0);
    const Box box{-6.0, 6.0, -oracle::pi, oracle::pi};
    double prev = std::numeric_limits<double>::infinity();
    for (int k : {1, 2, 4}) {
        const GridPath gp = grid_distance_upper(m, {-3.0, -2.0 * oracle::pi / 3.0}, {3.0, 2.0 * oracle::pi / 3.0},
                                                GridSpec{box, 24 * k + 1, 12 * k + 1, 16}, cfg);
        CHECK(gp.length <= prev + 1e-9);
        prev = gp.length;
    }
}

TEST_CASE("refine_path") {
    const QuadratureConfig cfg;
    const ConformalMetric b = ConformalMetric::radial(RadialProfile::bubble(1.0));
    // a radial segment is a geodesic
    const Polyline straight{{{0.0, 0.0}, {0.25, 0.0}, {0.5, 0.0}, {1.0, 0.0}}};
    const Polyline same = refine_path(b, straight, cfg);
    for (const Point2& v : same.points) CHECK(std::abs(v.y) <= 1e-8);
    CHECK(std::abs(curve_length(b, same, cfg).value - curve_length(b, straight, cfg).value) <= 1e-8);
    CHECK(curve_length(b, same, cfg).value == doctest::Approx(oracle::pi / 2).epsilon(1e-9));

    Polyline zig;
    for (int i = 0; i <= 10; ++i) zig.points.push_back({0.1 * i, (i % 2 == 1) ? 0.05 : 0.0});
    const double gap_before = curve_length(b, zig, cfg).value - oracle::pi / 2;
    const double gap_after = curve_length(b, refine_path(b, zig, cfg), cfg).value - oracle::pi / 2;
    CHECK(gap_after >= -1e-9);
    CHECK(gap_after * 10.0 <= gap_before);

    const ConformalMetric flat = ConformalMetric::flat();
    CHECK(refine_path(flat, Polyline{{{0.0, 0.0}, {1.0, 1.0}}}, cfg).points.size() == 2);
}

TEST_CASE("property: refine_path never lengthens a path") {
    // vertices stay in the unit disk, a convex hemisphere, so nothing escapes to infinity
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-7;
    const ConformalMetric b = ConformalMetric::radial(RadialProfile::bubble(1.0));
    auto gen = oracle::rng(99);
    std::uniform_real_distribution<double> U(-0.7, 0.7);
    for (int trial = 0; trial < 100; ++trial) {
        Polyline p;
        for (int i = 0; i < 4; ++i) p.points.push_back({U(gen), U(gen)});
        const Polyline r = refine_path(b, p, cfg);
        CHECK(r.points.front() == p.points.front());
        CHECK(r.points.back() == p.points.back());
        CHECK(curve_length(b, r, cfg).value <= curve_length(b, p, cfg).value);
    }
}

TEST_CASE("property: lower bound never exceeds the upper bound") {
    const QuadratureConfig cfg;
    const std::vector<ConformalMetric> ms = {
        ConformalMetric::developing(DevelopingFunction::bubble(1.0)),
        ConformalMetric::developing(DevelopingFunction(AffineExp{0.5})),
        ConformalMetric::developing(DevelopingFunction(OneDim{{0.6, 0.0}, {0.8, 0.0}, 1.0}))};
    const GridSpec g{Box{-2.0, 2.0, -2.0, 2.0}, 41, 41, 16};
    auto gen = oracle::rng(5);
    std::uniform_real_distribution<double> U(-1.9, 1.9);
    for (const ConformalMetric& m : ms) {
        for (int i = 0; i < 20; ++i) {
            const Point2 p{U(gen), U(gen)}, q{U(gen), U(gen)};
            CHECK(sphere_lower_bound(m, p, q) <= grid_distance_upper(m, p, q, g, cfg).length + 1e-9);
        }
        const Point2 p{-0.8, 0.3}, q{0.9, -0.4};
        const DistanceEstimate e = distance_estimate(m, p, q, GridSpec{Box{-1.0, 1.0, -1.0, 1.0}, 21, 21, 16}, cfg);
        CHECK(e.lower_kind == LowerKind::sphere_pullback);
        CHECK(e.lower <= e.upper + 1e-9);
        CHECK(e.lower == sphere_lower_bound(m, p, q));
    }
}

TEST_CASE("strip bound") {
    const QuadratureConfig cfg;
    const StripBound s0 = strip_diameter_upper(ConformalMetric::developing(DevelopingFunction(AffineExp{0.0})), cfg);
    CHECK(s0.value == doctest::Approx(oracle::pi).epsilon(1e-8));
    const StripBound s2 = strip_diameter_upper(ConformalMetric::ut(2.0), cfg);
    CHECK(s2.value == doctest::Approx(ut_horizontal_mass_exact(2.0, s2.y_star)).epsilon(1e-8));
    CHECK(s2.value >= oracle::ut_diameter(2.0) - 1e-9);
    CHECK_THROWS_AS(strip_diameter_upper(ConformalMetric::flat(), cfg), BoundNotApplicableError);
}

TEST_CASE("u_t certificate") {
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const UtCertificate c = ut_certificate(t);
        INFO(t);
        CHECK(c.lower == oracle::ut_diameter(t));
        CHECK(c.a == doctest::Approx(oracle::ut_a(t)).epsilon(1e-12));
        CHECK(c.upper >= c.lower - 1e-9);
        CHECK(c.upper - c.lower <= 1e-3);
        CHECK(c.samples_checked > 0);
    }
    CHECK_THROWS_AS(ut_certificate(-1.0), DomainError);
}

TEST_CASE("u_t grid path reaches the diameter") {
    const QuadratureConfig cfg;
    const double a = oracle::ut_a(1.0);
    const GridPath gp = grid_distance_upper(ConformalMetric::ut(1.0), {a, oracle::pi}, {a, -oracle::pi},
                                            GridSpec{Box{-20.0, 20.0, -oracle::pi, oracle::pi}, 801, 161, 16}, cfg);
    CHECK(gp.length >= oracle::ut_diameter(1.0) - 1e-9);
    CHECK(gp.length <= 1.01 * oracle::ut_diameter(1.0));
}

TEST_CASE("exp-exp certificate") {
    const ExpExpCertificate c = expexp_certificate();
    CHECK(c.bound == 2.0 * oracle::pi);
    CHECK(c.p.x == doctest::Approx(std::log(oracle::pi)));
    CHECK(c.q.y - c.p.y == doctest::Approx(-2.0 * oracle::pi));
    CHECK(c.samples_checked >= 2000);
}

TEST_CASE("escape diameter bound") {
    const QuadratureConfig cfg;
    const double b = escape_diameter_upper(RadialProfile::bubble(1.0), cfg);
    CHECK(b >= oracle::pi);
    CHECK(b <= oracle::pi + 1e-6);
    const double g = escape_diameter_upper(RadialProfile::gaussian_neg(), cfg);
    CHECK(g >= oracle::gauss_ray(10.0));
    CHECK(g <= oracle::pi);
    // l does not vanish at the last knot
    const RadialProfile s = RadialProfile::spline(
        TabulatedSpline::hermite({0.0, 0.5, 1.0, 1.5, 2.0}, {0.0, -0.5, -2.0, -4.5, -8.0}, {0.0, -2.0, -4.0, -6.0, -8.0}));
    CHECK_THROWS_AS(escape_diameter_upper(s, cfg), InconclusiveError);
}
