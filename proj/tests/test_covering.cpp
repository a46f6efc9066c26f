#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liouville/covering.hpp"
#include "liouville/radial.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {

QuadratureConfig tight() {
    QuadratureConfig c;
    c.rel_tol = 1e-12;
    c.abs_tol = 1e-14;
    return c;
}

RadialPair bubble_pair(double lambda) {
    return {RadialProfile::bubble(lambda), RadialProfile::bubble(1.0 / lambda), 1.0};
}

}  // namespace

TEST_CASE("hypotheses on the bubble family") {
    const RadialPair p = bubble_pair(0.5);
    const HypothesesCheck h = hypotheses_check(p, pair_grid(p));
    CHECK(h.all_pass());
    CHECK(h.min_gap > 0.0);
    CHECK(std::abs(h.boundary_gap) < 1e-14);
    CHECK(std::abs(h.min_differential) < 1e-10);
    CHECK(pair_grid(p).size() == 1001);

    // the same pair read as a dual pair fails the order
    CHECK_FALSE(hypotheses_check(p, pair_grid(p), Orientation::dual).ordered);
    const RadialPair d{RadialProfile::bubble(2.0), RadialProfile::bubble(0.5), 1.0};
    CHECK(hypotheses_check(d, pair_grid(d), Orientation::dual).all_pass());

    const RadialPair same{RadialProfile::bubble(1.0), RadialProfile::bubble(1.0), 1.0};
    CHECK_FALSE(hypotheses_check(same, pair_grid(same)).ordered);
    const RadialPair mismatch{RadialProfile::bubble(0.5), RadialProfile::bubble(2.0), 0.9};
    CHECK_FALSE(hypotheses_check(mismatch, pair_grid(mismatch)).boundary_match);
}

TEST_CASE("complementary caps are the equality case") {
    for (double lambda : {0.25, 0.5, 0.75, 0.9}) {
        const CoveringSum s = covering_sum(bubble_pair(lambda), tight());
        INFO(lambda);
        CHECK(s.area1 == doctest::Approx(oracle::bubble_area(lambda, 1.0)).epsilon(1e-11));
        CHECK(s.area2 == doctest::Approx(oracle::bubble_area(1.0 / lambda, 1.0)).epsilon(1e-11));
        CHECK(std::abs(s.margin) <= 1e-8);
        CHECK(std::abs(s.lhs - 4.0 * oracle::pi) <= 1e-8);
        CHECK(s.rhs == doctest::Approx(4.0 * oracle::pi).epsilon(1e-11));
        const RadialPair d{RadialProfile::bubble(1.0 / lambda), RadialProfile::bubble(lambda), 1.0};
        CHECK(std::abs(dual_covering_sum(d, tight()).margin) <= 1e-8);
    }
}

TEST_CASE("covering preconditions") {
    const RadialPair same{RadialProfile::bubble(1.0), RadialProfile::bubble(1.0), 1.0};
    CHECK_THROWS_AS(covering_sum(same, tight()), PreconditionError);
    const RadialPair not_super{RadialProfile::bubble_shifted(1.0, -0.2), RadialProfile::bubble_shifted(4.0, -0.2), 0.5};
    CHECK_THROWS_AS(covering_sum(not_super, tight()), PreconditionError);
    CHECK_THROWS_AS(dual_covering_sum(bubble_pair(0.5), tight()), PreconditionError);
}

TEST_CASE("strict pairs") {
    const StrictPair sp = construct_strict_pair(RadialProfile::bubble_shifted(1.0, 0.2), 1.0, Orientation::primal);
    CHECK(sp.amplitude > 0.0);
    CHECK(sp.attempts >= 1);
    CHECK(hypotheses_check(sp.pair, pair_grid(sp.pair)).all_pass());
    CHECK(covering_sum(sp.pair, tight()).margin > 0.0);
    CHECK_THROWS_AS(construct_strict_pair(RadialProfile::bubble(1.0), 1.0, Orientation::dual, 0.25, 8),
                    ResolutionError);

    const RadialPair closed{RadialProfile::bubble_shifted(1.0, 0.2),
                            RadialProfile::bubble_shifted(2.0, std::log(0.8) + 0.2), 1.0};
    CHECK(covering_sum(closed, tight()).margin > 0.0);
    const RadialPair dual{RadialProfile::bubble(1.0), RadialProfile::bubble_shifted(0.5, std::log(1.25)), 2.0};
    CHECK(dual_covering_sum(dual, tight()).margin == doctest::Approx(0.48 * oracle::pi).epsilon(1e-8));
}

TEST_CASE("property: rescaled bubble pairs are strict") {
    // u1 = Bubble(1) - c, u2 = Bubble(mu) - c2 with u2(1) = u1(1); needs 0 <= c <= -ln(2 mu / (1 + mu^2))
    for (double mu : {1.5, 2.0, 3.0}) {
        const double k = std::log(2.0 * mu / (1.0 + mu * mu));
        for (double frac : {0.0, 0.5, 1.0}) {
            const double c = -frac * k;
            const RadialPair p{RadialProfile::bubble_shifted(1.0, c), RadialProfile::bubble_shifted(mu, c + k), 1.0};
            INFO("mu=" << mu << " c=" << c);
            REQUIRE(hypotheses_check(p, pair_grid(p)).all_pass());
            const CoveringSum s = covering_sum(p, tight());
            CHECK(s.margin > 0.0);
            CHECK(s.rhs == doctest::Approx(4.0 * oracle::pi * std::exp(-2.0 * c)).epsilon(1e-10));
        }
    }
}

TEST_CASE("radial isoperimetric inequality") {
    const QuadratureConfig cfg = tight();
    const RadialProfile b = RadialProfile::bubble(1.0);
    for (double r : {0.3, 1.0, 5.0}) {
        const IsoperimetricResult d = radial_isoperimetric(b, {{0.0, r}}, cfg);
        CHECK(d.pass);
        CHECK(std::abs(d.margin) <= 1e-9);
        CHECK(d.perimeter == doctest::Approx(oracle::bubble_length(1.0, r)));
    }
    const IsoperimetricResult ann = radial_isoperimetric(b, {{0.5, 1.0}, {2.0, 3.0}}, cfg);
    CHECK(ann.pass);
    CHECK(ann.margin > 0.0);
    CHECK(ann.area == doctest::Approx(oracle::bubble_area(1.0, 1.0) - oracle::bubble_area(1.0, 0.5) +
                                      oracle::bubble_area(1.0, 3.0) - oracle::bubble_area(1.0, 2.0)));
    const IsoperimetricResult ext =
        radial_isoperimetric(b, {{2.0, std::numeric_limits<double>::infinity()}}, cfg);
    CHECK(ext.area == doctest::Approx(4.0 * oracle::pi - oracle::bubble_area(1.0, 2.0)).epsilon(1e-10));
    CHECK(std::abs(ext.margin) <= 1e-9);
    // touching annuli merge into one
    const IsoperimetricResult merged = radial_isoperimetric(b, {{0.0, 0.5}, {0.5, 1.0}}, cfg);
    CHECK(merged.perimeter == doctest::Approx(oracle::bubble_length(1.0, 1.0)));
    CHECK_THROWS_AS(radial_isoperimetric(b, {{0.0, 1.0}, {0.5, 2.0}}, cfg), InvalidDomainError);
    CHECK_THROWS_AS(radial_isoperimetric(b, {{1.0, 0.5}}, cfg), InvalidDomainError);
    CHECK_THROWS_AS(radial_isoperimetric(RadialProfile::bubble_shifted(1.0, -0.1), {{0.0, 1.0}}, cfg),
                    PreconditionError);

    // consistent with the disk form checked by the radial suite
    const RadialProfile g = RadialProfile::gaussian_neg();
    const RadialReport rep = compute_report(g, QuadratureConfig{});
    for (std::size_t i = 10; i < rep.r.size(); i += 97) {
        const IsoperimetricResult d = radial_isoperimetric(g, {{0.0, rep.r[i]}}, cfg);
        CHECK(d.area == doctest::Approx(rep.A[i]).epsilon(1e-8));
        CHECK(d.pass);
    }
}

TEST_CASE("level-set functionals") {
    const RadialPair p = bubble_pair(0.5);
    const double top = p.u2.u(0.0) - p.u1.u(0.0);
    const LevelSetProfile ls = level_set_profile(p, 1.0, linspace(0.0, top, 21), tight());
    CHECK(ls.monotone);
    CHECK(ls.alpha.front() + ls.beta.front() == doctest::Approx(4.0 * oracle::pi).epsilon(1e-9));
    CHECK(ls.beta.front() == doctest::Approx(oracle::bubble_area(0.5, 1.0)).epsilon(1e-9));
    CHECK(ls.alpha.back() == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(ls.relation_residual < 0.1);

    const RadialPair same{RadialProfile::bubble(1.0), RadialProfile::bubble(1.0), 1.0};
    CHECK_THROWS_AS(level_set_profile(same, 1.0, {0.0}, tight()), PreconditionError);

    // u = u2 - u1 oscillates: too many roots of u - t
    std::vector<double> r = linspace(0.0, 1.0, 4001), u;
    for (double x : r) u.push_back(oracle::bubble_u(1.0, x) + 0.5 + 0.1 * std::sin(400.0 * x));
    const RadialPair wiggle{RadialProfile::bubble(1.0), RadialProfile::spline(TabulatedSpline::interpolate(r, u)), 1.0};
    CHECK_THROWS_AS(level_set_profile(wiggle, 1.0, {0.5}, tight()), ResolutionError);
}

TEST_CASE("subsolution volume") {
    const QuadratureConfig cfg = tight();
    for (double c : {0.1, 0.3}) {
        const SubsolutionVolume v = subsolution_volume_check(RadialProfile::bubble_shifted(1.0, -c), cfg);
        CHECK(v.pass());
        CHECK(v.margin > 0.0);
        CHECK(v.volume == doctest::Approx(4.0 * oracle::pi * std::exp(2.0 * c)).epsilon(1e-7));
    }
    const SubsolutionVolume b = subsolution_volume_check(RadialProfile::bubble(1.0), cfg);
    CHECK(b.pass());
    CHECK(std::abs(b.margin) <= 1e-8);
    const SubsolutionVolume g = subsolution_volume_check(RadialProfile::gaussian_neg(), cfg);
    CHECK_FALSE(g.subsolution);
    const SubsolutionVolume ae = subsolution_volume_check(SolutionField(DevelopingFunction(AffineExp{1.0})), cfg);
    CHECK(ae.subsolution);
    CHECK(ae.divergent);
    const SubsolutionVolume sb = subsolution_volume_check(SolutionField(DevelopingFunction::bubble(2.0)), cfg);
    CHECK(sb.subsolution);
    CHECK(sb.volume == doctest::Approx(4.0 * oracle::pi).epsilon(1e-5));
}
