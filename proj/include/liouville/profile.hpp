#pragma once

// Radially symmetric profiles u(r) on [0, inf) with exact first and second
// derivatives.

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace liouville {

enum class DecayClass { rational, gaussian, truncated };

std::string to_string(DecayClass d);

/// Piecewise cubic u on [0, r_last]. Built either as a C^2 interpolating
/// spline through (r, u) with u'(0) = 0, or as a C^1 Hermite interpolant
/// through (r, u, u'). The first knot must be r = 0.
class TabulatedSpline {
public:
    static TabulatedSpline interpolate(std::vector<double> r, std::vector<double> u);
    static TabulatedSpline hermite(std::vector<double> r, std::vector<double> u,
                                   std::vector<double> du);

    double u(double r) const;
    double du(double r) const;
    double d2u(double r) const;
    double r_last() const { return r_.back(); }
    const std::vector<double>& knots() const { return r_; }

    /// Largest jump of u'' across an interior knot and where it happens.
    struct Jump {
        double size = 0.0;
        double at = 0.0;
    };
    Jump max_second_derivative_jump() const;

private:
    TabulatedSpline(std::vector<double> r, std::vector<double> u, std::vector<double> du);
    std::size_t interval(double r) const;

    std::vector<double> r_, u_, du_;
    // coefficients of u on [r_i, r_{i+1}] in powers of (r - r_i)
    std::vector<double> c2_, c3_;
};

class RadialProfile;

struct Bubble {
    double lambda = 1.0;
};
/// Bubble(lambda) minus the constant c.
struct BubbleShifted {
    double lambda = 1.0;
    double c = 0.0;
};
/// u = -r^2.
struct GaussianNeg {};
/// base + amplitude * (1 - r^2/radius^2)^2 inside the disk of the given radius.
struct Bumped {
    std::shared_ptr<const RadialProfile> base;
    double amplitude = 0.0;
    double radius = 1.0;
};

class RadialProfile {
public:
    using Variant = std::variant<Bubble, BubbleShifted, GaussianNeg, TabulatedSpline, Bumped>;

    static RadialProfile bubble(double lambda);
    static RadialProfile bubble_shifted(double lambda, double c);
    static RadialProfile gaussian_neg();
    static RadialProfile spline(TabulatedSpline s);
    static RadialProfile bumped(const RadialProfile& base, double amplitude, double radius);

    double u(double r) const;
    double du(double r) const;
    double d2u(double r) const;
    /// u'(r)/r, with the limit u''(0) at r = 0.
    double du_over_r(double r) const;
    /// Radial Laplacian u'' + u'/r.
    double laplacian(double r) const { return d2u(r) + du_over_r(r); }
    /// Delta u + e^{2u}; <= 0 for supersolutions.
    double defect(double r) const;
    double factor(double r) const;

    DecayClass decay() const;
    /// Right end of the domain: infinity, or the last spline knot.
    double domain_end() const;
    std::string kind() const;
    std::string label() const;
    const Variant& variant() const { return v_; }

private:
    explicit RadialProfile(Variant v) : v_(std::move(v)) {}
    void check_radius(double r) const;
    Variant v_;
};

}  // namespace liouville
