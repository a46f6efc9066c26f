#include "liouville/devfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "liouville/errors.hpp"

namespace liouville {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kExpOverflow = 709.0;
const double kLogPoleSwitch = std::log(kPoleSwitchModulus);

double softplus(double s) {
    return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
}

double log_abs(Complex z) { return std::log(std::abs(z)); }

// Local description of f near a point. When `reciprocal` is set, value and
// deriv describe g = 1/f instead. The log fields stay exact even when the
// complex values under- or overflow.
struct Jet {
    bool reciprocal = false;
    bool at_pole = false;
    Complex value{};
    Complex deriv{};
    double log_abs_value = 0.0;
    double log_abs_deriv = 0.0;
    double arg_value = 0.0;
};

// F = num / den with F' = D / den^2.
Jet ratio_jet(Complex num, Complex den, Complex d_num, double log_abs_d) {
    Jet j;
    const double an = std::abs(num);
    const double ad = std::abs(den);
    if (an <= kPoleSwitchModulus * ad) {
        j.value = num / den;
        j.deriv = d_num / (den * den);
        j.log_abs_value = std::log(an) - std::log(ad);
        j.log_abs_deriv = log_abs_d - 2.0 * std::log(ad);
    } else {
        j.reciprocal = true;
        j.at_pole = (ad == 0.0);
        j.value = den / num;
        j.deriv = -d_num / (num * num);
        j.log_abs_value = std::log(ad) - std::log(an);
        j.log_abs_deriv = log_abs_d - 2.0 * std::log(an);
    }
    j.arg_value = std::arg(j.value);
    return j;
}

Jet jet_of(const Mobius& m, Complex w) {
    const Complex det = m.a * m.d - m.b * m.c;
    return ratio_jet(m.a * w + m.b, m.c * w + m.d, det, log_abs(det));
}

Jet jet_of(const AffineExp& a, Complex w) {
    Jet j;
    if (w.real() < 30.0) {
        const Complex e = std::exp(w);
        const Complex f = a.t + e;
        const double lf = log_abs(f);
        if (lf <= kLogPoleSwitch) {
            j.value = f;
            j.deriv = e;
            j.log_abs_value = lf;
            j.log_abs_deriv = w.real();
        } else {
            j.reciprocal = true;
            j.value = 1.0 / f;
            j.deriv = -e / (f * f);
            j.log_abs_value = -lf;
            j.log_abs_deriv = w.real() - 2.0 * lf;
        }
        j.arg_value = std::arg(j.value);
        return j;
    }
    // g = e^{-w} / (1 + t e^{-w}), g' = -e^{-w} / (1 + t e^{-w})^2
    const Complex em = std::exp(-w);
    const Complex h = 1.0 + a.t * em;
    const double lh = log_abs(h);
    j.reciprocal = true;
    j.value = em / h;
    j.deriv = -em / (h * h);
    j.log_abs_value = -w.real() - lh;
    j.log_abs_deriv = -w.real() - 2.0 * lh;
    j.arg_value = -w.imag() - std::arg(h);
    return j;
}

Jet jet_of(const ExpExp&, Complex w) {
    Jet j;
    const double ex = std::exp(w.real());
    const double lre = ex * std::cos(w.imag());  // Re e^w = ln|f|
    const double lim = ex * std::sin(w.imag());  // Im e^w = arg f
    const Complex e{lre, lim};
    if (lre <= kLogPoleSwitch) {
        j.value = std::polar(std::exp(lre), lim);
        j.deriv = e * j.value;
        j.log_abs_value = lre;
        j.log_abs_deriv = w.real() + lre;
        j.arg_value = std::remainder(lim, 2.0 * std::numbers::pi);
    } else {
        j.reciprocal = true;
        j.value = std::polar(std::exp(-lre), -lim);
        j.deriv = -e * j.value;
        j.log_abs_value = -lre;
        j.log_abs_deriv = w.real() - lre;
        j.arg_value = std::remainder(-lim, 2.0 * std::numbers::pi);
    }
    return j;
}

Jet jet_of(const OneDim& o, Complex w) {
    const Complex det = o.p * o.p + std::norm(o.q);
    const Complex cw = o.c * w;
    // Write e^{cw} or e^{-cw}, whichever is bounded, so neither overflows.
    if (cw.real() <= 0.0) {
        const Complex s = std::exp(cw);
        return ratio_jet(o.p * s - std::conj(o.q), o.q * s + o.p, o.c * det * s,
                         std::log(std::abs(o.c)) + log_abs(det) + cw.real());
    }
    const Complex eta = std::exp(-cw);
    return ratio_jet(o.p - std::conj(o.q) * eta, o.q + o.p * eta, o.c * det * eta,
                     std::log(std::abs(o.c)) + log_abs(det) - cw.real());
}

Jet jet(const DevelopingFunction& f, Complex z) {
    const Similarity& s = f.similarity();
    const Complex w = s.pull_back(z);
    Jet j = std::visit([w](const auto& v) { return jet_of(v, w); }, f.variant());
    const Complex k = s.chain_factor();
    j.deriv *= k;
    j.log_abs_deriv += std::log(s.scale);
    return j;
}

// ln|f'| for either representation.
double log_abs_f_deriv(const Jet& j) {
    return j.reciprocal ? j.log_abs_deriv - 2.0 * j.log_abs_value : j.log_abs_deriv;
}

}  // namespace

std::string DevelopingFunction::kind() const {
    struct Namer {
        std::string operator()(const Mobius&) const { return "mobius"; }
        std::string operator()(const AffineExp&) const { return "affine_exp"; }
        std::string operator()(const ExpExp&) const { return "exp_exp"; }
        std::string operator()(const OneDim&) const { return "one_dim"; }
    };
    return std::visit(Namer{}, variant_);
}

ExtendedValue eval(const DevelopingFunction& f, Complex z) {
    const Jet j = jet(f, z);
    if (!j.reciprocal) return {ExtendedValue::Kind::finite, j.value};
    if (j.at_pole) return {ExtendedValue::Kind::infinity, {}};
    const double log_mod = -j.log_abs_value;
    const double arg = -j.arg_value;
    if (log_mod > kExpOverflow || j.value == Complex{0.0, 0.0}) {
        return {ExtendedValue::Kind::saturated, std::polar(1.0, arg)};
    }
    return {ExtendedValue::Kind::finite, std::polar(std::exp(log_mod), arg)};
}

Complex deriv(const DevelopingFunction& f, Complex z) {
    const Jet j = jet(f, z);
    if (j.at_pole) throw PoleError("deriv: f has a pole at the requested point");
    if (!j.reciprocal) {
        if (!std::isfinite(j.deriv.real()) || !std::isfinite(j.deriv.imag())) {
            throw OverflowError("deriv: |f'| exceeds the double range");
        }
        return j.deriv;
    }
    const double log_mod = log_abs_f_deriv(j);
    if (log_mod > kExpOverflow || j.value == Complex{0.0, 0.0}) {
        throw OverflowError("deriv: |f'| exceeds the double range");
    }
    return -j.deriv / (j.value * j.value);
}

LogPolar log_polar(const DevelopingFunction& f, Complex z) {
    const Jet j = jet(f, z);
    if (!j.reciprocal) return {j.log_abs_value, j.arg_value};
    if (j.at_pole) return {std::numeric_limits<double>::infinity(), 0.0};
    return {-j.log_abs_value, std::remainder(-j.arg_value, 2.0 * std::numbers::pi)};
}

double SolutionField::u(double x, double y) const {
    // ln 2|f'|/(1+|f|^2) is the same expression in g = 1/f, so either
    // representation of the jet can be used as is.
    const Jet j = jet(f_, {x, y});
    return kLn2 + j.log_abs_deriv - softplus(2.0 * j.log_abs_value);
}

double SolutionField::factor(double x, double y) const { return std::exp(u(x, y)); }

double solution_u(const SolutionField& s, double x, double y) { return s.u(x, y); }

double pde_residual(const SolutionField& s, double x, double y, double h) {
    if (!(h > 0.0)) throw DomainError("pde_residual: step h must be positive");
    const double c = s.u(x, y);
    const double lap =
        (s.u(x + h, y) + s.u(x - h, y) + s.u(x, y + h) + s.u(x, y - h) - 4.0 * c) / (h * h);
    return lap + std::exp(2.0 * c);
}

ConvergenceStudy residual_convergence(const SolutionField& s, const std::vector<Point2>& points,
                                      const std::vector<double>& hs) {
    if (points.empty() || hs.size() < 2) throw DomainError("residual_convergence: need points and two steps");
    ConvergenceStudy out;
    out.h = hs;
    for (double h : hs) {
        double sum = 0.0;
        for (const Point2& z : points) {
            const double r = pde_residual(s, z.x, z.y, h);
            sum += r * r;
        }
        out.rms.push_back(std::sqrt(sum / double(points.size())));
    }
    out.min_order = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
        const double p = std::log(out.rms[i] / out.rms[i + 1]) / std::log(hs[i] / hs[i + 1]);
        out.orders.push_back(p);
        out.min_order = std::min(out.min_order, p);
    }
    return out;
}

ValidationReport validate(const DevelopingFunction& f, const Box& box, std::size_t n) {
    if (n < 1) throw DomainError("validate: need at least one sample per axis");
    const Similarity& s = f.similarity();
    if (!(s.scale > 0.0) || !std::isfinite(s.scale)) {
        throw InvalidFunctionError("similarity scale must be positive and finite");
    }
    bool may_have_poles = false;
    if (const auto* m = std::get_if<Mobius>(&f.variant())) {
        const Complex det = m->a * m->d - m->b * m->c;
        const double size = std::abs(m->a * m->d) + std::abs(m->b * m->c);
        if (std::abs(det) <= 1e-14 * size || size == 0.0) {
            throw InvalidFunctionError("Mobius determinant ad - bc vanishes");
        }
        may_have_poles = m->c != Complex{0.0, 0.0};
    } else if (const auto* o = std::get_if<OneDim>(&f.variant())) {
        const double norm = std::norm(o->p) + std::norm(o->q);
        if (std::abs(norm - 1.0) > 1e-12) {
            throw InvalidFunctionError("one_dim requires |p|^2 + |q|^2 = 1");
        }
        if (o->c == 0.0) throw InvalidFunctionError("one_dim requires c != 0");
        if (std::abs(o->p * o->p + std::norm(o->q)) == 0.0) {
            throw InvalidFunctionError("one_dim Mobius factor is degenerate");
        }
        may_have_poles = o->q != Complex{0.0, 0.0};
    } else if (const auto* a = std::get_if<AffineExp>(&f.variant())) {
        if (!(a->t >= 0.0)) throw InvalidFunctionError("affine_exp requires t >= 0");
    }

    ValidationReport report;
    report.min_abs_deriv = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = n == 1 ? 0.5 * (box.x_min + box.x_max)
                                : box.x_min + (box.x_max - box.x_min) * double(i) / double(n - 1);
        for (std::size_t k = 0; k < n; ++k) {
            const double y = n == 1 ? 0.5 * (box.y_min + box.y_max)
                                    : box.y_min + (box.y_max - box.y_min) * double(k) / double(n - 1);
            const Jet j = jet(f, {x, y});
            const double log_d = log_abs_f_deriv(j);
            if ((may_have_poles && j.reciprocal) || !std::isfinite(log_d) || log_d > kExpOverflow) {
                ++report.samples_skipped;
                continue;
            }
            ++report.samples_used;
            const double d = std::exp(log_d);
            if (d < report.min_abs_deriv) {
                report.min_abs_deriv = d;
                report.argmin = {x, y};
            }
        }
    }
    report.near_vanishing_deriv = report.min_abs_deriv < 1e-12;
    return report;
}

}  // namespace liouville
