#pragma once

// Radial supersolutions: circle length l, disk area A, ray length R, the
// critical radius r0 and the inequality suite they satisfy.

#include <string>
#include <vector>

#include "liouville/profile.hpp"
#include "liouville/quad.hpp"

namespace liouville {

/// Tolerance used by every pointwise differential inequality.
inline constexpr double kPointwiseTol = 1e-10;
/// Verdict tolerance for relative inequality margins.
inline constexpr double kMarginTol = 1e-9;
/// Threshold standing in for lim l(r) = 0.
inline constexpr double kVanishingLength = 1e-6;

struct SupersolutionCheck {
    bool pass = false;
    double min_margin = 0.0;
    double at = 0.0;
    std::vector<double> r;
    std::vector<double> margin;  // -(u'' + u'/r + e^{2u})
};

/// Pointwise test of u'' + u'/r + e^{2u} <= 0. Throws NeedsSmoothingError
/// when u'' jumps by more than 1e-8 at a point inside the grid range.
SupersolutionCheck supersolution_check(const RadialProfile& p, const std::vector<double>& r_grid);

/// Largest r used for limit surrogates: 1e12 for rational decay, 10 for
/// Gaussian decay, the last knot for tabulated profiles.
double decay_radius(const RadialProfile& p);

/// l(r) = 2 pi r e^{u(r)}.
double circle_length(const RadialProfile& p, double r);

/// Smallest zero of 1 + r u'(r) on [1e-8, r_max], to 1e-12.
/// Throws NoCriticalRadiusError when no sign change is bracketed.
double critical_radius(const RadialProfile& p, double r_max);

/// Integral of e^{u} over [r, inf) (or to the end of a tabulated profile).
QuadResult ray_tail_length(const RadialProfile& p, double r, const QuadratureConfig& cfg);
/// Integral of 2 pi rho e^{2u} over [r, inf).
QuadResult area_tail(const RadialProfile& p, double r, const QuadratureConfig& cfg);

struct RadialReport {
    std::string label;
    DecayClass decay = DecayClass::rational;
    std::vector<double> r, l, A, R, eta;
    // A_inf - A(r) and R_inf - R(r), accumulated from the far end so that
    // they keep full relative precision where A and R saturate.
    std::vector<double> A_tail, R_tail;
    double A_inf = 0.0;
    double R_inf = 0.0;
    double r0 = 0.0;
    double l_r0 = 0.0;
    double A_r0 = 0.0;
    double R_r0 = 0.0;
    double r_max = 0.0;    // decay radius
    double l_r_max = 0.0;
    double min_far_length = 0.0;  // min of l over sampled r in [r0, r_max]
    bool l_unimodal = false;
    bool supersolution = false;
    double supersolution_margin = 0.0;
};

/// Grid: 200 points on [0, 4 r0], 300 geometric points from 4 r0 until l
/// drops to 1% of l(r0), plus r0 itself. Cumulative integrals use rel 1e-12.
RadialReport compute_report(const RadialProfile& p, const QuadratureConfig& cfg);

struct InequalityCheck {
    std::string name;
    std::string statement;
    bool applicable = true;
    double min_margin = 0.0;  // relative: (rhs - lhs) / max(|lhs|, |rhs|)
    double at_r = 0.0;
    std::size_t points = 0;
    bool pass = false;
};

struct InequalityReport {
    std::string label;
    std::vector<InequalityCheck> checks;
    // per-grid-point margins, NaN where a check does not apply
    std::vector<std::string> columns;
    std::vector<std::vector<double>> margin_curves;
    bool all_pass() const;
    const InequalityCheck& check(const std::string& name) const;
};

/// Evaluates the suite on the report grid. Always produces a report.
InequalityReport inequality_suite(const RadialReport& rep);
InequalityReport inequality_suite(const RadialProfile& p, const QuadratureConfig& cfg);

struct NdCheck {
    int n = 3;
    double min_margin_first = 0.0;   // -(u'' + u'/r + e^{2u})
    double at_first = 0.0;
    double min_margin_second = 0.0;  // -(u'' + (2n-3)u'/r + (n-2)u'^2 + (n-1)e^{2u})
    double at_second = 0.0;
    double R_inf = 0.0;
    double volume = 0.0;
    double sphere_volume = 0.0;
    bool pointwise_pass = false;
    bool diameter_pass = false;
    bool volume_pass = false;
    bool pass() const { return pointwise_pass && diameter_pass && volume_pass; }
};

/// Volume of the unit n-sphere, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_volume(int n);

NdCheck nd_system_check(const RadialProfile& p, int n, const std::vector<double>& r_grid,
                        const QuadratureConfig& cfg);

/// Evenly spaced points on [a, b], both ends included.
std::vector<double> linspace(double a, double b, std::size_t n);
/// Geometrically spaced points on [a, b], a > 0, both ends included.
std::vector<double> geomspace(double a, double b, std::size_t n);

}  // namespace liouville
