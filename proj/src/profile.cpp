#include "liouville/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "liouville/errors.hpp"
#include "liouville/format.hpp"

namespace liouville {

std::string to_string(DecayClass d) {
    switch (d) {
        case DecayClass::rational: return "rational";
        case DecayClass::gaussian: return "gaussian";
        case DecayClass::truncated: return "truncated";
    }
    return "unknown";
}

// ---- TabulatedSpline ------------------------------------------------------

namespace {

void check_knots(const std::vector<double>& r, std::size_t n_u) {
    if (r.size() < 2) throw InvalidConfigError("spline: need at least two knots");
    if (r.size() != n_u) throw InvalidConfigError("spline: r and u lengths differ");
    if (r.front() != 0.0) throw InvalidConfigError("spline: first knot must be r = 0");
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (!(r[i] > r[i - 1])) throw InvalidConfigError("spline: knots must increase strictly");
    }
}

}  // namespace

TabulatedSpline::TabulatedSpline(std::vector<double> r, std::vector<double> u,
                                 std::vector<double> du)
    : r_(std::move(r)), u_(std::move(u)), du_(std::move(du)) {
    const std::size_t n = r_.size() - 1;
    c2_.resize(n);
    c3_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = r_[i + 1] - r_[i];
        const double delta = (u_[i + 1] - u_[i]) / h;
        c2_[i] = (3.0 * delta - 2.0 * du_[i] - du_[i + 1]) / h;
        c3_[i] = (du_[i] + du_[i + 1] - 2.0 * delta) / (h * h);
    }
}

TabulatedSpline TabulatedSpline::interpolate(std::vector<double> r, std::vector<double> u) {
    check_knots(r, u.size());
    const std::size_t n = r.size() - 1;
    std::vector<double> h(n), delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        h[i] = r[i + 1] - r[i];
        delta[i] = (u[i + 1] - u[i]) / h[i];
    }
    // Second derivatives M: clamped u'(0) = 0 on the left, natural on the right.
    std::vector<double> sub(n + 1, 0.0), diag(n + 1, 0.0), sup(n + 1, 0.0), rhs(n + 1, 0.0);
    diag[0] = 2.0 * h[0];
    sup[0] = h[0];
    rhs[0] = 6.0 * delta[0];
    for (std::size_t i = 1; i < n; ++i) {
        sub[i] = h[i - 1];
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        sup[i] = h[i];
        rhs[i] = 6.0 * (delta[i] - delta[i - 1]);
    }
    diag[n] = 1.0;
    rhs[n] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> m(n + 1);
    m[n] = rhs[n] / diag[n];
    for (std::size_t i = n; i-- > 0;) m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];

    std::vector<double> du(n + 1);
    for (std::size_t i = 0; i < n; ++i) du[i] = delta[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
    du[n] = delta[n - 1] + h[n - 1] * (m[n - 1] + 2.0 * m[n]) / 6.0;
    du[0] = 0.0;
    return TabulatedSpline(std::move(r), std::move(u), std::move(du));
}

TabulatedSpline TabulatedSpline::hermite(std::vector<double> r, std::vector<double> u,
                                         std::vector<double> du) {
    check_knots(r, u.size());
    if (du.size() != r.size()) throw InvalidConfigError("spline: du length differs from r");
    return TabulatedSpline(std::move(r), std::move(u), std::move(du));
}

std::size_t TabulatedSpline::interval(double r) const {
    const auto it = std::upper_bound(r_.begin(), r_.end(), r);
    const std::size_t k = it == r_.begin() ? 0 : std::size_t(it - r_.begin()) - 1;
    return std::min(k, r_.size() - 2);
}

double TabulatedSpline::u(double r) const {
    const std::size_t i = interval(r);
    const double s = r - r_[i];
    return u_[i] + s * (du_[i] + s * (c2_[i] + s * c3_[i]));
}

double TabulatedSpline::du(double r) const {
    const std::size_t i = interval(r);
    const double s = r - r_[i];
    return du_[i] + s * (2.0 * c2_[i] + 3.0 * s * c3_[i]);
}

double TabulatedSpline::d2u(double r) const {
    const std::size_t i = interval(r);
    return 2.0 * c2_[i] + 6.0 * (r - r_[i]) * c3_[i];
}

TabulatedSpline::Jump TabulatedSpline::max_second_derivative_jump() const {
    Jump j;
    for (std::size_t i = 1; i + 1 < r_.size(); ++i) {
        const double h = r_[i] - r_[i - 1];
        const double left = 2.0 * c2_[i - 1] + 6.0 * h * c3_[i - 1];
        const double right = 2.0 * c2_[i];
        const double size = std::abs(left - right);
        if (size > j.size) j = {size, r_[i]};
    }
    return j;
}

// ---- RadialProfile --------------------------------------------------------

RadialProfile RadialProfile::bubble(double lambda) {
    if (!(lambda > 0.0)) throw InvalidConfigError("bubble: lambda must be positive");
    return RadialProfile(Bubble{lambda});
}

RadialProfile RadialProfile::bubble_shifted(double lambda, double c) {
    if (!(lambda > 0.0)) throw InvalidConfigError("bubble_shifted: lambda must be positive");
    if (!std::isfinite(c)) throw InvalidConfigError("bubble_shifted: c must be finite");
    return RadialProfile(BubbleShifted{lambda, c});
}

RadialProfile RadialProfile::gaussian_neg() { return RadialProfile(GaussianNeg{}); }

RadialProfile RadialProfile::spline(TabulatedSpline s) { return RadialProfile(std::move(s)); }

RadialProfile RadialProfile::bumped(const RadialProfile& base, double amplitude, double radius) {
    if (!(radius > 0.0)) throw InvalidConfigError("bumped: radius must be positive");
    if (!std::isfinite(amplitude)) throw InvalidConfigError("bumped: amplitude must be finite");
    return RadialProfile(Bumped{std::make_shared<const RadialProfile>(base), amplitude, radius});
}

void RadialProfile::check_radius(double r) const {
    if (!(r >= 0.0)) throw DomainError("radial profile evaluated at negative r");
    if (const auto* s = std::get_if<TabulatedSpline>(&v_)) {
        if (r > s->r_last() * (1.0 + 1e-12)) {
            throw DomainError("spline profile evaluated beyond its last knot");
        }
    }
}

namespace {

double bubble_u(double l, double r) { return std::log(2.0 * l) - std::log1p(l * l * r * r); }
double bubble_du(double l, double r) { return -2.0 * l * l * r / (1.0 + l * l * r * r); }
double bubble_du_over_r(double l, double r) { return -2.0 * l * l / (1.0 + l * l * r * r); }
double bubble_d2u(double l, double r) {
    const double q = l * l * r * r;
    return -2.0 * l * l * (1.0 - q) / ((1.0 + q) * (1.0 + q));
}

// v = A (1 - q)^2 with q = r^2 / R^2, zero outside the disk.
struct Bump {
    double a, rad;
    bool inside(double r) const { return r < rad; }
    double q(double r) const { return r * r / (rad * rad); }
    double v(double r) const { return inside(r) ? a * (1 - q(r)) * (1 - q(r)) : 0.0; }
    double dv_over_r(double r) const {
        return inside(r) ? -4.0 * a * (1.0 - q(r)) / (rad * rad) : 0.0;
    }
    double dv(double r) const { return r * dv_over_r(r); }
    double d2v(double r) const {
        return inside(r) ? 4.0 * a * (3.0 * q(r) - 1.0) / (rad * rad) : 0.0;
    }
};

}  // namespace

double RadialProfile::u(double r) const {
    check_radius(r);
    struct V {
        double r;
        double operator()(const Bubble& b) const { return bubble_u(b.lambda, r); }
        double operator()(const BubbleShifted& b) const { return bubble_u(b.lambda, r) - b.c; }
        double operator()(const GaussianNeg&) const { return -r * r; }
        double operator()(const TabulatedSpline& s) const { return s.u(r); }
        double operator()(const Bumped& b) const {
            return b.base->u(r) + Bump{b.amplitude, b.radius}.v(r);
        }
    };
    return std::visit(V{r}, v_);
}

double RadialProfile::du(double r) const {
    check_radius(r);
    struct V {
        double r;
        double operator()(const Bubble& b) const { return bubble_du(b.lambda, r); }
        double operator()(const BubbleShifted& b) const { return bubble_du(b.lambda, r); }
        double operator()(const GaussianNeg&) const { return -2.0 * r; }
        double operator()(const TabulatedSpline& s) const { return s.du(r); }
        double operator()(const Bumped& b) const {
            return b.base->du(r) + Bump{b.amplitude, b.radius}.dv(r);
        }
    };
    return std::visit(V{r}, v_);
}

double RadialProfile::d2u(double r) const {
    check_radius(r);
    struct V {
        double r;
        double operator()(const Bubble& b) const { return bubble_d2u(b.lambda, r); }
        double operator()(const BubbleShifted& b) const { return bubble_d2u(b.lambda, r); }
        double operator()(const GaussianNeg&) const { return -2.0; }
        double operator()(const TabulatedSpline& s) const { return s.d2u(r); }
        double operator()(const Bumped& b) const {
            return b.base->d2u(r) + Bump{b.amplitude, b.radius}.d2v(r);
        }
    };
    return std::visit(V{r}, v_);
}

double RadialProfile::du_over_r(double r) const {
    check_radius(r);
    struct V {
        double r;
        double operator()(const Bubble& b) const { return bubble_du_over_r(b.lambda, r); }
        double operator()(const BubbleShifted& b) const { return bubble_du_over_r(b.lambda, r); }
        double operator()(const GaussianNeg&) const { return -2.0; }
        double operator()(const TabulatedSpline& s) const {
            return r == 0.0 ? s.d2u(0.0) : s.du(r) / r;
        }
        double operator()(const Bumped& b) const {
            return b.base->du_over_r(r) + Bump{b.amplitude, b.radius}.dv_over_r(r);
        }
    };
    return std::visit(V{r}, v_);
}

double RadialProfile::defect(double r) const {
    return laplacian(r) + std::exp(2.0 * u(r));
}

double RadialProfile::factor(double r) const { return std::exp(u(r)); }

DecayClass RadialProfile::decay() const {
    struct V {
        DecayClass operator()(const Bubble&) const { return DecayClass::rational; }
        DecayClass operator()(const BubbleShifted&) const { return DecayClass::rational; }
        DecayClass operator()(const GaussianNeg&) const { return DecayClass::gaussian; }
        DecayClass operator()(const TabulatedSpline&) const { return DecayClass::truncated; }
        DecayClass operator()(const Bumped& b) const { return b.base->decay(); }
    };
    return std::visit(V{}, v_);
}

double RadialProfile::domain_end() const {
    if (const auto* s = std::get_if<TabulatedSpline>(&v_)) return s->r_last();
    if (const auto* b = std::get_if<Bumped>(&v_)) return b->base->domain_end();
    return std::numeric_limits<double>::infinity();
}

std::string RadialProfile::kind() const {
    struct V {
        std::string operator()(const Bubble&) const { return "bubble"; }
        std::string operator()(const BubbleShifted&) const { return "bubble_shifted"; }
        std::string operator()(const GaussianNeg&) const { return "gaussian_neg"; }
        std::string operator()(const TabulatedSpline&) const { return "spline"; }
        std::string operator()(const Bumped&) const { return "bumped"; }
    };
    return std::visit(V{}, v_);
}

std::string RadialProfile::label() const {
    struct V {
        std::string operator()(const Bubble& b) const { return "Bubble(" + fmt(b.lambda) + ")"; }
        std::string operator()(const BubbleShifted& b) const {
            return "BubbleShifted(" + fmt(b.lambda) + ", " + fmt(b.c) + ")";
        }
        std::string operator()(const GaussianNeg&) const { return "GaussianNeg"; }
        std::string operator()(const TabulatedSpline& s) const {
            return "Spline(" + std::to_string(s.knots().size()) + " knots)";
        }
        std::string operator()(const Bumped& b) const {
            return "Bumped(" + b.base->label() + ", " + fmt(b.amplitude) + ", " + fmt(b.radius) +
                   ")";
        }
    };
    return std::visit(V{}, v_);
}

}  // namespace liouville
