#include "liouville/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "liouville/errors.hpp"
#include "liouville/format.hpp"

namespace liouville {

SpherePoint stereo_inv(Complex w) {
    const double m = std::abs(w);
    if (std::isinf(m)) return {0.0, 0.0, 1.0};
    if (m > 1e100) return stereo_inv(LogPolar{std::log(m), std::arg(w)});
    const double n = m * m;
    const double d = n + 1.0;
    return {2.0 * w.real() / d, 2.0 * w.imag() / d, (n - 1.0) / d};
}

SpherePoint stereo_inv(const ExtendedValue& w) {
    switch (w.kind) {
        case ExtendedValue::Kind::finite: return stereo_inv(w.value);
        case ExtendedValue::Kind::infinity:
        case ExtendedValue::Kind::saturated: return {0.0, 0.0, 1.0};
    }
    return {0.0, 0.0, 1.0};
}

SpherePoint stereo_inv(const LogPolar& w) {
    const double L = w.log_modulus;
    if (L == std::numeric_limits<double>::infinity()) return {0.0, 0.0, 1.0};
    if (L == -std::numeric_limits<double>::infinity()) return {0.0, 0.0, -1.0};
    const double sech = 1.0 / std::cosh(L);
    return {std::cos(w.argument) * sech, std::sin(w.argument) * sech, std::tanh(L)};
}

ExtendedValue stereo_fwd(const SpherePoint& s) {
    // (X + iY)/(1 - Z) = (1 + Z)/(X - iY); use whichever denominator is larger.
    if (s.Z <= 0.0) {
        return {ExtendedValue::Kind::finite, Complex{s.X, s.Y} / (1.0 - s.Z)};
    }
    const Complex conj{s.X, -s.Y};
    if (conj == Complex{0.0, 0.0}) return {ExtendedValue::Kind::infinity, {}};
    return {ExtendedValue::Kind::finite, (1.0 + s.Z) / conj};
}

double sphere_distance(const SpherePoint& a, const SpherePoint& b) {
    const double dot = std::clamp(a.X * b.X + a.Y * b.Y + a.Z * b.Z, -1.0, 1.0);
    const double cx = a.Y * b.Z - a.Z * b.Y;
    const double cy = a.Z * b.X - a.X * b.Z;
    const double cz = a.X * b.Y - a.Y * b.X;
    // atan2 keeps full precision near 0 and pi, where acos(dot) does not.
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
}

ConformalMetric ConformalMetric::ut(double t) {
    if (!(t >= 0.0)) throw InvalidConfigError("ut metric: t must be >= 0");
    return ConformalMetric(BuiltinMetric{BuiltinMetric::Name::ut, t});
}

double ConformalMetric::u(Point2 p) const {
    struct V {
        Point2 p;
        double operator()(const SolutionField& s) const { return s.u(p.x, p.y); }
        double operator()(const RadialProfile& r) const { return r.u(norm(p)); }
        double operator()(const BuiltinMetric& b) const {
            if (b.name == BuiltinMetric::Name::flat) return 0.0;
            const double t = b.t;
            const double c = std::cos(p.y);
            if (p.x > 0.0) {
                const double e = std::exp(-p.x);
                return std::numbers::ln2 - p.x - std::log1p(2.0 * t * e * c + (1.0 + t * t) * e * e);
            }
            const double e = std::exp(p.x);
            return std::numbers::ln2 + p.x - std::log(1.0 + t * t + 2.0 * t * e * c + e * e);
        }
    };
    return std::visit(V{p}, v_);
}

std::string ConformalMetric::label() const {
    struct V {
        std::string operator()(const SolutionField& s) const { return "developing:" + s.source().kind(); }
        std::string operator()(const RadialProfile& r) const { return "radial:" + r.label(); }
        std::string operator()(const BuiltinMetric& b) const {
            return b.name == BuiltinMetric::Name::flat ? "builtin:flat" : "builtin:ut(" + fmt(b.t) + ")";
        }
    };
    return std::visit(V{}, v_);
}

SphereImage pushforward(const ConformalMetric& m, Point2 p) {
    const SolutionField* s = m.solution();
    if (s == nullptr) throw PreconditionError("pushforward needs a metric built from a developing function");
    const LogPolar lp = log_polar(s->source(), p.as_complex());
    return {stereo_inv(lp), lp.log_modulus > 709.0};
}

}  // namespace liouville
