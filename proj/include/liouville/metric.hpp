#pragma once

// Conformal metrics e^{2u} delta on the plane and the round unit sphere.

#include <optional>
#include <string>
#include <variant>

#include "liouville/devfn.hpp"
#include "liouville/geometry.hpp"
#include "liouville/profile.hpp"

namespace liouville {

struct SpherePoint {
    double X = 0.0;
    double Y = 0.0;
    double Z = -1.0;
};

/// Inverse stereographic projection from the north pole:
/// (2 Re w, 2 Im w, |w|^2 - 1) / (|w|^2 + 1). Infinity maps to (0, 0, 1).
SpherePoint stereo_inv(Complex w);
SpherePoint stereo_inv(const ExtendedValue& w);
/// Same map written in (ln|w|, arg w); finite for any log modulus.
SpherePoint stereo_inv(const LogPolar& w);
/// Forward projection. The north pole maps to infinity.
ExtendedValue stereo_fwd(const SpherePoint& s);

/// Great-circle distance in [0, pi].
double sphere_distance(const SpherePoint& a, const SpherePoint& b);

/// Closed-form metrics that need no developing function.
struct BuiltinMetric {
    enum class Name { ut, flat };
    Name name = Name::flat;
    double t = 0.0;  // parameter of the u_t family
};

class ConformalMetric {
public:
    using Variant = std::variant<SolutionField, RadialProfile, BuiltinMetric>;

    static ConformalMetric developing(const DevelopingFunction& f) {
        return ConformalMetric(SolutionField(f));
    }
    static ConformalMetric radial(const RadialProfile& p) { return ConformalMetric(p); }
    /// u_t = ln(2 e^x / (1 + t^2 + 2 t e^x cos y + e^{2x})).
    static ConformalMetric ut(double t);
    static ConformalMetric flat() { return ConformalMetric(BuiltinMetric{}); }

    double u(Point2 p) const;
    double factor(Point2 p) const { return std::exp(u(p)); }

    const Variant& variant() const { return v_; }
    const SolutionField* solution() const { return std::get_if<SolutionField>(&v_); }
    const RadialProfile* profile() const { return std::get_if<RadialProfile>(&v_); }
    std::string label() const;

private:
    explicit ConformalMetric(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

struct SphereImage {
    SpherePoint point;
    bool saturated = false;  // |f| overflowed; point is the north-pole limit
};

/// Pi^{-1}(f(p)) for a metric built from a developing function.
/// Throws PreconditionError for other metric kinds.
SphereImage pushforward(const ConformalMetric& m, Point2 p);

}  // namespace liouville
