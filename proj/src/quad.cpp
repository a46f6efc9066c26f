#include "liouville/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace liouville {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw InvalidConfigError("quadrature: rel_tol must be positive");
    if (!(abs_tol > 0.0)) throw InvalidConfigError("quadrature: abs_tol must be positive");
    if (max_subdivisions < 1) throw InvalidConfigError("quadrature: max_subdivisions must be >= 1");
    if (!(improper_cutoff_growth > 1.0)) {
        throw InvalidConfigError("quadrature: improper_cutoff_growth must exceed 1");
    }
    if (initial_panels < 1) throw InvalidConfigError("quadrature: initial_panels must be >= 1");
}

ParameterRange parameter_range(const Curve& c) {
    struct V {
        ParameterRange operator()(const Segment&) const { return {0.0, 1.0}; }
        ParameterRange operator()(const Polyline& p) const {
            return {0.0, p.points.empty() ? 0.0 : double(p.points.size() - 1)};
        }
        ParameterRange operator()(const Circle&) const { return {0.0, 2.0 * std::numbers::pi}; }
        ParameterRange operator()(const HalfEllipse&) const {
            return {-0.5 * std::numbers::pi, 0.5 * std::numbers::pi};
        }
        ParameterRange operator()(const HorizontalLine& h) const { return {h.x_min, h.x_max}; }
        ParameterRange operator()(const Ray& r) const { return {0.0, r.r_max}; }
    };
    return std::visit(V{}, c);
}

namespace {

std::size_t polyline_piece(const Polyline& p, double theta) {
    const double last = double(p.points.size() - 1);
    const double k = std::clamp(std::floor(theta), 0.0, std::max(0.0, last - 1.0));
    return std::size_t(k);
}

}  // namespace

Point2 position(const Curve& c, double theta) {
    struct V {
        double th;
        Point2 operator()(const Segment& s) const { return s.p + th * (s.q - s.p); }
        Point2 operator()(const Polyline& p) const {
            if (p.points.size() == 1) return p.points[0];
            const std::size_t k = polyline_piece(p, th);
            return p.points[k] + (th - double(k)) * (p.points[k + 1] - p.points[k]);
        }
        Point2 operator()(const Circle& c) const {
            return {c.center.x + c.r * std::cos(th), c.center.y + c.r * std::sin(th)};
        }
        Point2 operator()(const HalfEllipse& e) const {
            return {e.a + e.s * std::numbers::pi * std::cos(th), std::numbers::pi * std::sin(th)};
        }
        Point2 operator()(const HorizontalLine& h) const { return {th, h.y}; }
        Point2 operator()(const Ray& r) const {
            return {r.origin.x + th * std::cos(r.angle), r.origin.y + th * std::sin(r.angle)};
        }
    };
    return std::visit(V{theta}, c);
}

double speed(const Curve& c, double theta) {
    struct V {
        double th;
        double operator()(const Segment& s) const { return norm(s.q - s.p); }
        double operator()(const Polyline& p) const {
            if (p.points.size() < 2) return 0.0;
            const std::size_t k = polyline_piece(p, th);
            return norm(p.points[k + 1] - p.points[k]);
        }
        double operator()(const Circle& c) const { return std::abs(c.r); }
        double operator()(const HalfEllipse& e) const {
            const double s = std::sin(th);
            const double co = std::cos(th);
            return std::numbers::pi * std::sqrt(e.s * e.s * s * s + co * co);
        }
        double operator()(const HorizontalLine&) const { return 1.0; }
        double operator()(const Ray&) const { return 1.0; }
    };
    return std::visit(V{theta}, c);
}

QuadResult curve_length(const ConformalMetric& m, const Curve& c, const QuadratureConfig& cfg) {
    if (const auto* p = std::get_if<Polyline>(&c)) {
        QuadResult total;
        for (std::size_t i = 0; i + 1 < p->points.size(); ++i) {
            total += curve_length(m, Segment{p->points[i], p->points[i + 1]}, cfg);
        }
        return total;
    }
    if (const auto* s = std::get_if<Segment>(&c)) {
        if (s->p == s->q) return {};
    }
    const ParameterRange range = parameter_range(c);
    auto integrand = [&](double th) {
        const double v = speed(c, th);
        return v == 0.0 ? 0.0 : m.factor(position(c, th)) * v;
    };
    if (std::holds_alternative<Ray>(c) && range.hi > 2.0) {
        // long rays: pieces [0, 1], [1, 2], [2, 4], ...
        QuadResult total = adaptive_simpson(integrand, 0.0, 1.0, cfg);
        for (double lo = 1.0; lo < range.hi; lo *= 2.0) {
            total += adaptive_simpson(integrand, lo, std::min(2.0 * lo, range.hi), cfg);
        }
        return total;
    }
    return adaptive_simpson(integrand, range.lo, range.hi, cfg);
}

QuadResult horizontal_mass(const ConformalMetric& m, double y, const QuadratureConfig& cfg) {
    auto g = [&](double x) { return m.factor({x, y}); };
    auto shell = [&](double x0, double x1) {
        if (x0 == 0.0) return adaptive_simpson(g, -x1, x1, cfg);
        QuadResult r = adaptive_simpson(g, x0, x1, cfg);
        r += adaptive_simpson(g, -x1, -x0, cfg);
        return r;
    };
    return improper_by_doubling(shell, 8.0, cfg, "horizontal_mass");
}

double ut_horizontal_mass_exact(double t, double y) {
    const double s = std::sqrt(1.0 + t * t * std::sin(y) * std::sin(y));
    return 2.0 / s * (0.5 * std::numbers::pi - std::atan(t * std::cos(y) / s));
}

QuadResult vertical_mass(const ConformalMetric& m, double x, double y_min, double y_max,
                         const QuadratureConfig& cfg) {
    return curve_length(m, Segment{{x, y_min}, {x, y_max}}, cfg);
}

QuadResult radial_area(const RadialProfile& p, double r0, double r1, const QuadratureConfig& cfg) {
    auto g = [&](double rho) { return 2.0 * std::numbers::pi * rho * std::exp(2.0 * p.u(rho)); };
    return adaptive_simpson(g, r0, r1, cfg);
}

namespace {

// Conformal area of the annulus r0 <= |z| <= r1 by nested polar quadrature.
QuadResult polar_area(const ConformalMetric& m, double r0, double r1, const QuadratureConfig& cfg) {
    QuadratureConfig inner = cfg;
    inner.rel_tol = 0.1 * cfg.rel_tol;
    inner.abs_tol = 0.1 * cfg.abs_tol;
    auto ring = [&](double rho) {
        if (rho == 0.0) return 0.0;
        QuadratureConfig c = inner;
        // features of unit Euclidean size stay resolved on large circles
        c.initial_panels = std::clamp(int(std::ceil(4.0 * rho)), cfg.initial_panels, 4096);
        auto g = [&](double th) {
            return std::exp(2.0 * m.u({rho * std::cos(th), rho * std::sin(th)}));
        };
        return rho * adaptive_simpson(g, 0.0, 2.0 * std::numbers::pi, c).value;
    };
    return adaptive_simpson(ring, r0, r1, cfg);
}

}  // namespace

QuadResult disk_area(const ConformalMetric& m, double r, const QuadratureConfig& cfg) {
    if (!(r >= 0.0)) throw DomainError("disk_area: radius must be >= 0");
    if (const RadialProfile* p = m.profile()) return radial_area(*p, 0.0, r, cfg);
    return polar_area(m, 0.0, r, cfg);
}

QuadResult total_area(const ConformalMetric& m, const QuadratureConfig& cfg) {
    if (const RadialProfile* p = m.profile()) {
        if (std::isfinite(p->domain_end())) return radial_area(*p, 0.0, p->domain_end(), cfg);
        return improper_by_doubling(
            [&](double x0, double x1) { return radial_area(*p, x0, x1, cfg); }, 8.0, cfg,
            "total_area");
    }
    return improper_by_doubling([&](double x0, double x1) { return polar_area(m, x0, x1, cfg); },
                                8.0, cfg, "total_area");
}

}  // namespace liouville
