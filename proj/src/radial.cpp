#include "liouville/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "liouville/errors.hpp"
#include "liouville/parallel.hpp"

namespace liouville {
namespace {

constexpr double kPi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Kink {
    double at;
    double size;
};

// Points where u'' is discontinuous.
void collect_kinks(const RadialProfile& p, std::vector<Kink>& out) {
    if (const auto* s = std::get_if<TabulatedSpline>(&p.variant())) {
        const auto j = s->max_second_derivative_jump();
        if (j.size > 0.0) out.push_back({j.at, j.size});
    } else if (const auto* b = std::get_if<Bumped>(&p.variant())) {
        collect_kinks(*b->base, out);
        if (b->amplitude != 0.0) out.push_back({b->radius, 8.0 * std::abs(b->amplitude) / (b->radius * b->radius)});
    }
}

double rel_margin(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale == 0.0) return 0.0;
    return (rhs - lhs) / scale;
}

QuadratureConfig tight(const QuadratureConfig& cfg) {
    QuadratureConfig c = cfg;
    c.rel_tol = std::min(cfg.rel_tol, 1e-12);
    c.abs_tol = 1e-300;
    return c;
}

template <class G>
QuadResult integral_to_end(const RadialProfile& p, G g, double r, const QuadratureConfig& cfg,
                           const char* what) {
    const double end = p.domain_end();
    if (std::isfinite(end)) return adaptive_simpson(g, r, std::max(r, end), cfg);
    auto shell = [&](double x0, double x1) {
        return adaptive_simpson(g, x0 == 0.0 ? r : x0, x1, cfg);
    };
    return improper_by_doubling(shell, std::max(2.0 * r, r + 8.0), cfg, what);
}

}  // namespace

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    v.back() = b;
    return v;
}

std::vector<double> geomspace(double a, double b, std::size_t n) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("geomspace: endpoints must be positive");
    std::vector<double> v(n);
    const double la = std::log(a);
    const double lb = std::log(b);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = n == 1 ? a : std::exp(la + (lb - la) * double(i) / double(n - 1));
    }
    v.front() = a;
    if (n > 1) v.back() = b;
    return v;
}

SupersolutionCheck supersolution_check(const RadialProfile& p, const std::vector<double>& r_grid) {
    SupersolutionCheck out;
    if (r_grid.empty()) return out;
    const auto [lo, hi] = std::minmax_element(r_grid.begin(), r_grid.end());
    std::vector<Kink> kinks;
    collect_kinks(p, kinks);
    for (const Kink& k : kinks) {
        if (k.size > 1e-8 && k.at > *lo && k.at < *hi) {
            throw NeedsSmoothingError("profile is not twice differentiable inside the grid", k.at);
        }
    }
    out.r = r_grid;
    out.margin.resize(r_grid.size());
    out.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        out.margin[i] = -p.defect(r_grid[i]);
        if (out.margin[i] < out.min_margin) {
            out.min_margin = out.margin[i];
            out.at = r_grid[i];
        }
    }
    out.pass = out.min_margin >= -kPointwiseTol;
    return out;
}

double decay_radius(const RadialProfile& p) {
    switch (p.decay()) {
        case DecayClass::rational: return 1e12;
        case DecayClass::gaussian: return 10.0;
        case DecayClass::truncated: return p.domain_end();
    }
    return 1e12;
}

double circle_length(const RadialProfile& p, double r) {
    if (r == 0.0) return 0.0;
    return 2.0 * kPi * r * std::exp(p.u(r));
}

double critical_radius(const RadialProfile& p, double r_max) {
    auto g = [&](double r) { return 1.0 + r * p.du(r); };
    double lo = 1e-8;
    if (!(g(lo) > 0.0)) throw NoCriticalRadiusError("1 + r u'(r) is not positive at r = 1e-8");
    double hi = lo;
    bool found = false;
    while (hi < r_max) {
        lo = hi;
        hi = std::min(r_max, hi * 1.05);
        if (g(hi) <= 0.0) {
            found = true;
            break;
        }
    }
    if (!found) throw NoCriticalRadiusError("no sign change of 1 + r u'(r) below the decay radius");
    // keep g(lo) > 0 >= g(hi): converges to the smallest zero in the bracket
    for (int it = 0; it < 400; ++it) {
        if (hi - lo <= std::max(1e-12, 4.0 * std::numeric_limits<double>::epsilon() * hi)) break;
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

QuadResult ray_tail_length(const RadialProfile& p, double r, const QuadratureConfig& cfg) {
    if (!(r >= 0.0)) throw DomainError("ray_tail_length: r must be >= 0");
    auto g = [&](double rho) { return std::exp(p.u(rho)); };
    return integral_to_end(p, g, r, cfg, "ray_tail_length");
}

QuadResult area_tail(const RadialProfile& p, double r, const QuadratureConfig& cfg) {
    auto g = [&](double rho) { return 2.0 * kPi * rho * std::exp(2.0 * p.u(rho)); };
    return integral_to_end(p, g, r, cfg, "area_tail");
}

RadialReport compute_report(const RadialProfile& p, const QuadratureConfig& cfg) {
    const QuadratureConfig qc = tight(cfg);
    RadialReport rep;
    rep.label = p.label();
    rep.decay = p.decay();
    rep.r_max = decay_radius(p);
    rep.r0 = critical_radius(p, rep.r_max);
    rep.l_r0 = circle_length(p, rep.r0);

    const double end = std::min(rep.r_max, p.domain_end());
    std::vector<double> grid = linspace(0.0, std::min(4.0 * rep.r0, end), 200);
    if (end > 4.0 * rep.r0) {
        double r_suite = 4.0 * rep.r0;
        while (r_suite < end && circle_length(p, r_suite) > 0.01 * rep.l_r0) r_suite *= 1.1;
        r_suite = std::min(r_suite, end);
        const auto far = geomspace(4.0 * rep.r0, r_suite, 300);
        grid.insert(grid.end(), far.begin(), far.end());
    }
    grid.push_back(rep.r0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const std::size_t n = grid.size();
    rep.r = grid;

    std::vector<QuadResult> piece_a(n), piece_r(n);
    parallel_for(n, [&](std::size_t i) {
        if (i == 0) return;
        piece_a[i] = radial_area(p, grid[i - 1], grid[i], qc);
        piece_r[i] = adaptive_simpson([&](double rho) { return std::exp(p.u(rho)); }, grid[i - 1],
                                      grid[i], qc);
    });
    const double far_a = area_tail(p, grid.back(), qc).value;
    const double far_r = ray_tail_length(p, grid.back(), qc).value;

    rep.A.assign(n, 0.0);
    rep.R.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        rep.A[i] = rep.A[i - 1] + piece_a[i].value;
        rep.R[i] = rep.R[i - 1] + piece_r[i].value;
    }
    rep.A_tail.assign(n, 0.0);
    rep.R_tail.assign(n, 0.0);
    rep.A_tail[n - 1] = far_a;
    rep.R_tail[n - 1] = far_r;
    for (std::size_t i = n - 1; i-- > 0;) {
        rep.A_tail[i] = rep.A_tail[i + 1] + piece_a[i + 1].value;
        rep.R_tail[i] = rep.R_tail[i + 1] + piece_r[i + 1].value;
    }
    rep.A_inf = rep.A[n - 1] + far_a;
    rep.R_inf = rep.R[n - 1] + far_r;

    rep.l.resize(n);
    rep.eta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid[i];
        rep.l[i] = circle_length(p, r);
        rep.eta[i] = r > 0.0 ? std::exp(-p.u(r)) * (p.du(r) + 1.0 / r) : kNaN;
    }
    const std::size_t i0 = std::size_t(std::find(grid.begin(), grid.end(), rep.r0) - grid.begin());
    rep.A_r0 = rep.A[i0];
    rep.R_r0 = rep.R[i0];

    rep.l_unimodal = true;
    for (std::size_t i = 1; i < n; ++i) {
        const double g = 1.0 + grid[i] * p.du(grid[i]);
        if (grid[i] < rep.r0 && g < -1e-12) rep.l_unimodal = false;
        if (grid[i] > rep.r0 && g > 1e-12) rep.l_unimodal = false;
    }

    rep.l_r_max = circle_length(p, rep.r_max);
    rep.min_far_length = std::numeric_limits<double>::infinity();
    for (double r : geomspace(rep.r0, rep.r_max, 400)) {
        rep.min_far_length = std::min(rep.min_far_length, circle_length(p, r));
    }

    try {
        const auto sc = supersolution_check(p, grid);
        rep.supersolution = sc.pass;
        rep.supersolution_margin = sc.min_margin;
    } catch (const NeedsSmoothingError&) {
        rep.supersolution = false;
        rep.supersolution_margin = kNaN;
    }
    return rep;
}

bool InequalityReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const InequalityCheck& c) { return !c.applicable || c.pass; });
}

const InequalityCheck& InequalityReport::check(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw DomainError("no inequality check named " + name);
}

InequalityReport inequality_suite(const RadialReport& rep) {
    InequalityReport out;
    out.label = rep.label;
    const std::size_t n = rep.r.size();

    auto scalar = [&](const std::string& name, const std::string& statement, double lhs,
                      double rhs, double at) {
        InequalityCheck c{name, statement};
        c.min_margin = rel_margin(lhs, rhs);
        c.at_r = at;
        c.points = 1;
        c.pass = c.min_margin >= -kMarginTol;
        out.checks.push_back(c);
    };
    // margin(i) returns NaN where the check does not apply
    auto curve = [&](const std::string& name, const std::string& statement, auto margin) {
        InequalityCheck c{name, statement};
        std::vector<double> col(n, kNaN);
        c.min_margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double m = margin(i);
            col[i] = m;
            if (std::isnan(m)) continue;
            ++c.points;
            if (m < c.min_margin) {
                c.min_margin = m;
                c.at_r = rep.r[i];
            }
        }
        c.applicable = c.points > 0;
        if (!c.applicable) {
            c.min_margin = kNaN;
            c.at_r = kNaN;
        }
        c.pass = !c.applicable || c.min_margin >= -kMarginTol;
        out.checks.push_back(c);
        out.columns.push_back(name);
        out.margin_curves.push_back(std::move(col));
    };
    auto half_versine = [](double R) { return 2.0 * std::sin(0.5 * R) * std::sin(0.5 * R); };

    scalar("volume", "A_inf <= 4 pi", rep.A_inf, 4.0 * kPi, kNaN);
    scalar("diameter", "R_inf + min l / 4 <= pi", rep.R_inf + 0.25 * rep.min_far_length, kPi, kNaN);
    {
        double lmax = rep.l_r0;
        for (double v : rep.l) lmax = std::max(lmax, v);
        scalar("max_length", "max l = l(r0) <= 2 pi, l unimodal", lmax, 2.0 * kPi, rep.r0);
        auto& c = out.checks.back();
        c.pass = c.pass && rep.l_unimodal && rel_margin(lmax, rep.l_r0) >= -kMarginTol;
    }
    {
        InequalityCheck c{"length_vanishes", "l(r_max) < 1e-6"};
        c.min_margin = kVanishingLength - rep.l_r_max;
        c.at_r = rep.r_max;
        c.points = 1;
        c.pass = c.min_margin > 0.0;
        out.checks.push_back(c);
    }
    curve("isoperimetric", "A (A_inf - A) <= l^2 <= 4 pi A - A^2", [&](std::size_t i) {
        if (rep.r[i] == 0.0) return kNaN;
        const double A = rep.A[i];
        const double l2 = rep.l[i] * rep.l[i];
        return std::min(rel_margin(A * rep.A_tail[i], l2), rel_margin(l2, A * (4.0 * kPi - A)));
    });
    scalar("r0_ray_length", "R(r0) <= pi/2", rep.R_r0, 0.5 * kPi, rep.r0);
    curve("volume_cap", "A_inf (1 - cos R) <= 2 A", [&](std::size_t i) {
        if (rep.r[i] == 0.0) return kNaN;
        return rel_margin(rep.A_inf * half_versine(rep.R[i]), 2.0 * rep.A[i]);
    });
    curve("cap_ratio", "A / l >= (1 - cos R) / sin R", [&](std::size_t i) {
        const double s = std::sin(rep.R[i]);
        if (rep.r[i] == 0.0 || s < 1e-8) return kNaN;
        return rel_margin(rep.l[i] * half_versine(rep.R[i]), rep.A[i] * s);
    });
    curve("area_length_sine", "A / l <= sin R for r <= r0", [&](std::size_t i) {
        if (rep.r[i] == 0.0 || rep.r[i] > rep.r0) return kNaN;
        return rel_margin(rep.A[i], rep.l[i] * std::sin(rep.R[i]));
    });
    curve("area_le_length", "A <= l for r <= r0", [&](std::size_t i) {
        if (rep.r[i] == 0.0 || rep.r[i] > rep.r0) return kNaN;
        return rel_margin(rep.A[i], rep.l[i]);
    });
    curve("half_volume", "A >= A_inf / 2 where R >= pi/2", [&](std::size_t i) {
        if (rep.R[i] < 0.5 * kPi - 1e-9) return kNaN;
        return rel_margin(0.5 * rep.A_inf, rep.A[i]);
    });
    scalar("ray_length", "R_inf <= pi", rep.R_inf, kPi, kNaN);
    return out;
}

InequalityReport inequality_suite(const RadialProfile& p, const QuadratureConfig& cfg) {
    return inequality_suite(compute_report(p, cfg));
}

double sphere_volume(int n) {
    return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

NdCheck nd_system_check(const RadialProfile& p, int n, const std::vector<double>& r_grid,
                        const QuadratureConfig& cfg) {
    if (n < 3) throw DomainError("nd_system_check: n must be >= 3");
    NdCheck out;
    out.n = n;
    out.min_margin_first = std::numeric_limits<double>::infinity();
    out.min_margin_second = std::numeric_limits<double>::infinity();
    for (double r : r_grid) {
        const double e2u = std::exp(2.0 * p.u(r));
        const double d2 = p.d2u(r);
        const double dr = p.du_over_r(r);
        const double d1 = p.du(r);
        const double first = -(d2 + dr + e2u);
        const double second = -(d2 + (2 * n - 3) * dr + (n - 2) * d1 * d1 + (n - 1) * e2u);
        if (first < out.min_margin_first) {
            out.min_margin_first = first;
            out.at_first = r;
        }
        if (second < out.min_margin_second) {
            out.min_margin_second = second;
            out.at_second = r;
        }
    }
    out.pointwise_pass =
        out.min_margin_first >= -kPointwiseTol && out.min_margin_second >= -kPointwiseTol;

    const QuadratureConfig qc = tight(cfg);
    out.R_inf = ray_tail_length(p, 0.0, qc).value;
    out.diameter_pass = rel_margin(out.R_inf, kPi) >= -kMarginTol;

    const double omega = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
    auto g = [&](double r) { return omega * std::exp(n * p.u(r)) * std::pow(r, n - 1); };
    out.volume = integral_to_end(p, g, 0.0, qc, "nd volume").value;
    out.sphere_volume = sphere_volume(n);
    out.volume_pass = rel_margin(out.volume, out.sphere_volume) >= -kMarginTol;
    return out;
}

}  // namespace liouville
