#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liouville/errors.hpp"
#include "liouville/metric.hpp"
#include "oracles.hpp"

using namespace liouville;

TEST_CASE("inverse stereographic projection of known points") {
    const SpherePoint two = stereo_inv(Complex{2.0, 0.0});
    CHECK(two.X == doctest::Approx(0.8));
    CHECK(two.Y == doctest::Approx(0.0));
    CHECK(two.Z == doctest::Approx(0.6));
    const SpherePoint origin = stereo_inv(Complex{0.0, 0.0});
    CHECK(origin.Z == -1.0);
    const SpherePoint inf = stereo_inv(ExtendedValue{ExtendedValue::Kind::infinity, {}});
    CHECK(inf.Z == 1.0);
    const SpherePoint huge = stereo_inv(LogPolar{1e5, 0.3});
    CHECK(huge.Z == doctest::Approx(1.0));
    const SpherePoint tiny = stereo_inv(LogPolar{-1e5, 0.3});
    CHECK(tiny.Z == doctest::Approx(-1.0));
}

TEST_CASE("stereographic round trip") {
    auto gen = oracle::rng(3);
    std::uniform_real_distribution<double> L(-12.0, 12.0), A(-oracle::pi, oracle::pi);
    for (int i = 0; i < 1000; ++i) {
        const Complex w = std::polar(std::exp(L(gen)), A(gen));
        const SpherePoint s = stereo_inv(w);
        const oracle::P3 o = oracle::stereo_inv(w);
        CHECK(s.X == doctest::Approx(o.x).epsilon(1e-12));
        CHECK(s.Z == doctest::Approx(o.z).epsilon(1e-12));
        const ExtendedValue back = stereo_fwd(s);
        REQUIRE(back.is_finite());
        CHECK(std::abs(back.value - w) <= 1e-10 * std::max(1.0, std::abs(w)));
    }
    CHECK(stereo_fwd(SpherePoint{0.0, 0.0, 1.0}).kind == ExtendedValue::Kind::infinity);
}

TEST_CASE("sphere distance is a metric with the right scale") {
    const SpherePoint e{1.0, 0.0, 0.0}, n{0.0, 0.0, 1.0}, w{-1.0, 0.0, 0.0};
    CHECK(sphere_distance(e, n) == doctest::Approx(oracle::pi / 2));
    CHECK(sphere_distance(e, w) == doctest::Approx(oracle::pi));
    CHECK(sphere_distance(e, e) == 0.0);
    auto gen = oracle::rng(11);
    std::normal_distribution<double> N;
    auto random_point = [&] {
        double x = N(gen), y = N(gen), z = N(gen);
        const double r = std::sqrt(x * x + y * y + z * z);
        return SpherePoint{x / r, y / r, z / r};
    };
    for (int i = 0; i < 500; ++i) {
        const SpherePoint a = random_point(), b = random_point(), c = random_point();
        CHECK(sphere_distance(a, b) == doctest::Approx(sphere_distance(b, a)).epsilon(1e-14));
        CHECK(sphere_distance(a, c) <= sphere_distance(a, b) + sphere_distance(b, c) + 1e-12);
        CHECK(sphere_distance(a, b) ==
              doctest::Approx(oracle::sphere_angle({a.X, a.Y, a.Z}, {b.X, b.Y, b.Z})).epsilon(1e-9));
    }
    // accurate where arccos loses half the digits
    const SpherePoint near{std::cos(1e-9), std::sin(1e-9), 0.0};
    CHECK(sphere_distance(e, near) == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("metric kinds") {
    CHECK(ConformalMetric::flat().u({3.0, -2.0}) == 0.0);
    const ConformalMetric r = ConformalMetric::radial(RadialProfile::bubble(2.0));
    CHECK(r.u({0.3, 0.4}) == doctest::Approx(oracle::bubble_u(2.0, 0.5)));
    CHECK(r.profile() != nullptr);
    CHECK(r.solution() == nullptr);
    CHECK_THROWS_AS(pushforward(r, {0.0, 0.0}), PreconditionError);
    CHECK_THROWS_AS(pushforward(ConformalMetric::ut(1.0), {0.0, 0.0}), PreconditionError);
}

TEST_CASE("pushforward follows f") {
    const ConformalMetric m = ConformalMetric::developing(DevelopingFunction(AffineExp{1.0}));
    const SphereImage img = pushforward(m, {0.0, 0.0});  // f = 2
    CHECK(img.point.X == doctest::Approx(0.8));
    CHECK(img.point.Z == doctest::Approx(0.6));
    const ConformalMetric e = ConformalMetric::developing(DevelopingFunction(ExpExp{}));
    const SphereImage far = pushforward(e, {800.0, 0.0});
    CHECK(far.saturated);
    CHECK(far.point.Z == doctest::Approx(1.0));
}
