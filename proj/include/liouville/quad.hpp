#pragma once

// Adaptive Simpson quadrature, improper integrals by doubling truncation,
// and conformal lengths and areas built on them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/geometry.hpp"
#include "liouville/metric.hpp"

namespace liouville {

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    int max_subdivisions = 60;
    double improper_cutoff_growth = 2.0;
    int initial_panels = 16;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error += o.error;
        return *this;
    }
};

namespace detail {

inline constexpr std::size_t kEvaluationBudget = 20'000'000;

struct SimpsonState {
    std::size_t evaluations = 0;
    bool gave_up = false;
    int max_depth = 60;
};

template <class F>
QuadResult simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth, SimpsonState& st) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    st.evaluations += 2;
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double s2 = left + right;
    const double diff = s2 - whole;
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * h / 12.0 *
                         (std::abs(fa) + 4.0 * std::abs(flm) + 2.0 * std::abs(fm) +
                          4.0 * std::abs(frm) + std::abs(fb));
    if (std::abs(diff) <= 15.0 * tol || std::abs(diff) <= noise) {
        return {s2 + diff / 15.0, std::abs(diff) / 15.0};
    }
    if (depth >= st.max_depth || !(lm > a && m > lm && rm > m && b > rm) ||
        st.evaluations >= kEvaluationBudget) {
        st.gave_up = true;
        return {s2 + diff / 15.0, std::abs(diff) / 15.0};
    }
    QuadResult l = simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, st);
    const QuadResult r = simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, st);
    l += r;
    return l;
}

}  // namespace detail

/// Adaptive Simpson on [a, b] with Richardson correction. The interval is
/// first cut into cfg.initial_panels equal panels; panel results are summed
/// left to right so the value is reproducible bit for bit.
/// Throws ToleranceNotMetError if the depth limit is hit before the error
/// estimate drops below max(abs_tol, rel_tol * |integral|).
template <class F>
QuadResult adaptive_simpson(F&& f, double a, double b, const QuadratureConfig& cfg) {
    if (a == b) return {};
    const int panels = std::max(1, cfg.initial_panels);
    const double width = (b - a) / panels;
    std::vector<double> xs(2 * panels + 1), fs(2 * panels + 1);
    for (int i = 0; i <= 2 * panels; ++i) {
        xs[i] = i == 2 * panels ? b : a + 0.5 * width * i;
        fs[i] = f(xs[i]);
    }
    double scale = 0.0;
    std::vector<double> whole(panels);
    for (int p = 0; p < panels; ++p) {
        const double h = xs[2 * p + 2] - xs[2 * p];
        whole[p] = h / 6.0 * (fs[2 * p] + 4.0 * fs[2 * p + 1] + fs[2 * p + 2]);
        scale += h / 6.0 * (std::abs(fs[2 * p]) + 4.0 * std::abs(fs[2 * p + 1]) + std::abs(fs[2 * p + 2]));
    }
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(scale));
    detail::SimpsonState st;
    st.max_depth = cfg.max_subdivisions;
    st.evaluations = xs.size();
    QuadResult total;
    for (int p = 0; p < panels; ++p) {
        const double lo = xs[2 * p];
        const double hi = xs[2 * p + 2];
        const double share = tol * std::abs((hi - lo) / (b - a));
        total += detail::simpson_step(f, lo, hi, fs[2 * p], fs[2 * p + 1], fs[2 * p + 2], whole[p],
                                      share, 1, st);
    }
    if (!std::isfinite(total.value)) {
        throw DomainError("quadrature: integrand is not finite on the interval");
    }
    const double goal = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value));
    if (st.gave_up && total.error > goal) {
        throw ToleranceNotMetError("quadrature: tolerance not met within the subdivision limit",
                                   total.value, total.error);
    }
    return total;
}

/// Integral over an unbounded range by doubling truncation. shell(x0, x1)
/// must return the contribution of the shell between cutoffs x0 < x1, and
/// shell(0, x_start) the core. Stops when the last shell is below
/// max(abs_tol, rel_tol * |total|) and adds the geometric tail
/// inc * q / (1 - q) fitted to the last two shells. Three non-decreasing
/// shells in a row mean divergence.
template <class Shell>
QuadResult improper_by_doubling(Shell&& shell, double x_start, const QuadratureConfig& cfg,
                                const std::string& what) {
    QuadResult total = shell(0.0, x_start);
    double x = x_start;
    double prev = std::numeric_limits<double>::infinity();
    int rising = 0;
    for (int k = 0; k < 400; ++k) {
        const double x2 = x * cfg.improper_cutoff_growth;
        if (!std::isfinite(x2)) break;
        const QuadResult inc = shell(x, x2);
        total += inc;
        const double mag = std::abs(inc.value);
        if (mag <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value))) {
            if (mag > 0.0 && std::isfinite(prev) && mag < prev) {
                const double q = mag / prev;
                const double tail = inc.value * q / (1.0 - q);
                total.value += tail;
                total.error += std::abs(tail);
            }
            return total;
        }
        if (mag >= prev) {
            if (++rising >= 3) throw DivergentIntegralError(what + ": integral diverges", total.value);
        } else {
            rising = 0;
        }
        prev = mag;
        x = x2;
    }
    throw DivergentIntegralError(what + ": no convergence while doubling the cutoff", total.value);
}

// ---- curves ---------------------------------------------------------------

struct Segment {
    Point2 p, q;
};
struct Polyline {
    std::vector<Point2> points;
};
struct Circle {
    Point2 center;
    double r = 1.0;
};
/// x = a + s*pi*cos(theta), y = pi*sin(theta), theta in [-pi/2, pi/2].
struct HalfEllipse {
    double a = 0.0;
    double s = 1.0;
};
struct HorizontalLine {
    double y = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
};
/// origin + rho * (cos angle, sin angle), rho in [0, r_max].
struct Ray {
    Point2 origin;
    double angle = 0.0;
    double r_max = 1.0;
};

using Curve = std::variant<Segment, Polyline, Circle, HalfEllipse, HorizontalLine, Ray>;

struct ParameterRange {
    double lo, hi;
};
ParameterRange parameter_range(const Curve& c);
Point2 position(const Curve& c, double theta);
double speed(const Curve& c, double theta);

/// Integral of factor(position) * speed over the curve.
QuadResult curve_length(const ConformalMetric& m, const Curve& c, const QuadratureConfig& cfg);

/// Integral of e^{u(x, y)} over the whole line at height y.
QuadResult horizontal_mass(const ConformalMetric& m, double y, const QuadratureConfig& cfg);
/// Closed form of the same integral for the u_t family.
double ut_horizontal_mass_exact(double t, double y);

QuadResult vertical_mass(const ConformalMetric& m, double x, double y_min, double y_max,
                         const QuadratureConfig& cfg);

/// Conformal area of the Euclidean disk B_r.
QuadResult disk_area(const ConformalMetric& m, double r, const QuadratureConfig& cfg);
/// Conformal area of the whole plane; throws DivergentIntegralError when infinite.
QuadResult total_area(const ConformalMetric& m, const QuadratureConfig& cfg);

/// Integral of 2 pi rho e^{2u} over [r0, r1] for a radial profile.
QuadResult radial_area(const RadialProfile& p, double r0, double r1, const QuadratureConfig& cfg);

}  // namespace liouville
