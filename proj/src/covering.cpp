#include "liouville/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "liouville/errors.hpp"
#include "liouville/parallel.hpp"
#include "liouville/radial.hpp"

namespace liouville {
namespace {

constexpr double kPi = std::numbers::pi;

// L(u) = u'' + u'/rho + e^{2u}
double liouville_operator(const RadialProfile& p, double rho) { return p.defect(rho); }

std::vector<double> profile_grid(const RadialProfile& p) {
    std::vector<double> g{0.0};
    const double end = std::min(p.domain_end(), 1e3);
    for (double r : geomspace(std::min(1e-3, 0.5 * end), end, 600)) g.push_back(r);
    return g;
}

double rel_margin(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : (lhs - rhs) / scale;
}

void require_supersolution(const RadialProfile& p, const char* who) {
    if (!supersolution_check(p, profile_grid(p)).pass) {
        throw PreconditionError(std::string(who) + ": u1 is not a supersolution");
    }
}

CoveringSum sum_for(const RadialPair& pair, Orientation o, const QuadratureConfig& cfg, const char* who) {
    if (!(pair.r > 0.0)) throw PreconditionError(std::string(who) + ": r must be positive");
    const HypothesesCheck h = hypotheses_check(pair, pair_grid(pair), o);
    if (!h.ordered) throw PreconditionError(std::string(who) + ": u1 and u2 are not strictly ordered in B_r");
    if (!h.boundary_match) throw PreconditionError(std::string(who) + ": u1 and u2 differ on the boundary circle");
    if (!h.differential) throw PreconditionError(std::string(who) + ": differential inequality fails");
    require_supersolution(pair.u1, who);
    CoveringSum out;
    out.area1 = radial_area(pair.u1, 0.0, pair.r, cfg).value;
    out.area2 = radial_area(pair.u2, 0.0, pair.r, cfg).value;
    out.lhs = out.area1 + out.area2;
    out.rhs = area_tail(pair.u1, 0.0, cfg).value;
    out.margin = out.lhs - out.rhs;
    return out;
}

}  // namespace

std::vector<double> pair_grid(const RadialPair& pair) { return linspace(0.0, pair.r, 1001); }

HypothesesCheck hypotheses_check(const RadialPair& pair, const std::vector<double>& grid,
                                 Orientation orientation) {
    const double sign = orientation == Orientation::primal ? 1.0 : -1.0;
    HypothesesCheck out;
    out.min_gap = std::numeric_limits<double>::infinity();
    out.min_differential = std::numeric_limits<double>::infinity();
    for (double rho : grid) {
        if (rho < 0.0 || rho > pair.r) continue;
        if (rho < pair.r) {
            const double gap = sign * (pair.u2.u(rho) - pair.u1.u(rho));
            if (gap < out.min_gap) {
                out.min_gap = gap;
                out.at_gap = rho;
            }
        }
        const double d = sign * (liouville_operator(pair.u2, rho) - liouville_operator(pair.u1, rho));
        if (d < out.min_differential) {
            out.min_differential = d;
            out.at_differential = rho;
        }
    }
    out.boundary_gap = pair.u2.u(pair.r) - pair.u1.u(pair.r);
    out.ordered = out.min_gap > 0.0;
    out.boundary_match = std::abs(out.boundary_gap) <= 1e-9;
    out.differential = out.min_differential >= -kPointwiseTol;
    return out;
}

CoveringSum covering_sum(const RadialPair& pair, const QuadratureConfig& cfg) {
    return sum_for(pair, Orientation::primal, cfg, "covering_sum");
}

CoveringSum dual_covering_sum(const RadialPair& pair, const QuadratureConfig& cfg) {
    return sum_for(pair, Orientation::dual, cfg, "dual_covering_sum");
}

StrictPair construct_strict_pair(const RadialProfile& u1, double r, Orientation orientation, double step,
                                 int max_steps) {
    const double sign = orientation == Orientation::primal ? 1.0 : -1.0;
    StrictPair out{RadialPair{u1, u1, r}, 0.0, 0};
    for (int k = 1; k <= max_steps; ++k) {
        const double a = sign * step * k;
        RadialPair cand{u1, RadialProfile::bumped(u1, a, r), r};
        ++out.attempts;
        if (hypotheses_check(cand, pair_grid(cand), orientation).all_pass()) {
            out.pair = std::move(cand);
            out.amplitude = a;
            return out;
        }
    }
    throw ResolutionError("construct_strict_pair: no bump amplitude in the scan satisfies the hypotheses");
}

IsoperimetricResult radial_isoperimetric(const RadialProfile& u1, const std::vector<Annulus>& omega,
                                         const QuadratureConfig& cfg) {
    std::vector<Annulus> parts;
    for (const Annulus& a : omega) {
        if (!(a.inner >= 0.0) || !(a.outer > a.inner)) {
            throw InvalidDomainError("radial_isoperimetric: each annulus needs 0 <= inner < outer");
        }
        if (!parts.empty()) {
            if (a.inner < parts.back().outer) {
                throw InvalidDomainError("radial_isoperimetric: annuli overlap or are not sorted");
            }
            if (a.inner == parts.back().outer) {
                parts.back().outer = a.outer;
                continue;
            }
        }
        parts.push_back(a);
    }
    require_supersolution(u1, "radial_isoperimetric");
    IsoperimetricResult out;
    out.total_area = area_tail(u1, 0.0, cfg).value;
    // A_inf - A(omega), summed directly over the complement
    double outside = 0.0;
    double prev = 0.0;
    for (const Annulus& a : parts) {
        if (a.inner > 0.0) out.perimeter += circle_length(u1, a.inner);
        if (std::isfinite(a.outer)) {
            out.perimeter += circle_length(u1, a.outer);
            out.area += radial_area(u1, a.inner, a.outer, cfg).value;
        } else {
            out.area += area_tail(u1, a.inner, cfg).value;
        }
        outside += radial_area(u1, prev, a.inner, cfg).value;
        prev = a.outer;
    }
    if (std::isfinite(prev)) outside += area_tail(u1, prev, cfg).value;
    out.lhs = out.perimeter * out.perimeter;
    out.rhs = out.area * outside;
    out.margin = rel_margin(out.lhs, out.rhs);
    out.pass = out.margin >= -kMarginTol;
    return out;
}

LevelSetProfile level_set_profile(const RadialPair& pair, double lambda_param,
                                  const std::vector<double>& t_grid, const QuadratureConfig& cfg) {
    const std::vector<double> rho = linspace(0.0, pair.r, 2001);
    std::vector<double> du(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) du[i] = pair.u2.u(rho[i]) - pair.u1.u(rho[i]);
    for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
        if (!(du[i] > 0.0)) throw PreconditionError("level_set_profile: u2 - u1 must be positive in B_r");
    }
    auto diff = [&](double s) { return pair.u2.u(s) - pair.u1.u(s); };

    LevelSetProfile out;
    out.t = t_grid;
    out.lambda_param = lambda_param;
    out.alpha.assign(t_grid.size(), 0.0);
    out.beta.assign(t_grid.size(), 0.0);
    std::vector<int> too_many(t_grid.size(), 0);
    parallel_for(t_grid.size(), [&](std::size_t k) {
        const double t = t_grid[k];
        // superlevel set {u > t} as a union of intervals of rho
        std::vector<double> roots;
        for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
            const bool a = du[i] > t;
            const bool b = du[i + 1] > t;
            if (a == b) continue;
            double lo = rho[i], hi = rho[i + 1];
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                ((diff(mid) > t) == a ? lo : hi) = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        if (roots.size() > 64) {
            too_many[k] = 1;
            return;
        }
        std::vector<double> cuts{0.0};
        cuts.insert(cuts.end(), roots.begin(), roots.end());
        cuts.push_back(pair.r);
        bool inside = du.front() > t;
        double alpha = 0.0, beta = 0.0;
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j, inside = !inside) {
            if (!inside || cuts[j + 1] <= cuts[j]) continue;
            beta += radial_area(pair.u1, cuts[j], cuts[j + 1], cfg).value;
            alpha += lambda_param * radial_area(pair.u2, cuts[j], cuts[j + 1], cfg).value;
        }
        out.alpha[k] = alpha;
        out.beta[k] = beta;
    });
    if (std::any_of(too_many.begin(), too_many.end(), [](int v) { return v != 0; })) {
        throw ResolutionError("level_set_profile: more than 64 level crossings");
    }
    out.monotone = true;
    for (std::size_t k = 0; k + 1 < t_grid.size(); ++k) {
        const double sgn = t_grid[k + 1] >= t_grid[k] ? 1.0 : -1.0;
        if (sgn * (out.alpha[k + 1] - out.alpha[k]) > 1e-12 * std::max(1.0, out.alpha[k]) ||
            sgn * (out.beta[k + 1] - out.beta[k]) > 1e-12 * std::max(1.0, out.beta[k])) {
            out.monotone = false;
        }
        const double da = out.alpha[k + 1] - out.alpha[k];
        const double db = lambda_param * std::exp(t_grid[k] + t_grid[k + 1]) * (out.beta[k + 1] - out.beta[k]);
        const double scale = std::max(std::abs(da), std::abs(db));
        if (scale > 0.0) out.relation_residual = std::max(out.relation_residual, std::abs(da - db) / scale);
    }
    return out;
}

SubsolutionVolume subsolution_volume_check(const RadialProfile& p, const QuadratureConfig& cfg) {
    SubsolutionVolume out;
    out.min_defect = std::numeric_limits<double>::infinity();
    for (double r : profile_grid(p)) out.min_defect = std::min(out.min_defect, p.defect(r));
    out.subsolution = out.min_defect >= -kPointwiseTol;
    try {
        out.volume = area_tail(p, 0.0, cfg).value;
        out.margin = out.volume - 4.0 * kPi;
    } catch (const DivergentIntegralError&) {
        out.divergent = true;
    }
    return out;
}

SubsolutionVolume subsolution_volume_check(const SolutionField& s, const QuadratureConfig& cfg) {
    SubsolutionVolume out;
    out.min_defect = std::numeric_limits<double>::infinity();
    for (double x : linspace(-4.0, 4.0, 41)) {
        for (double y : linspace(-4.0, 4.0, 41)) {
            try {
                out.min_defect = std::min(out.min_defect, pde_residual(s, x, y, 1e-3));
            } catch (const Error&) {
                // poles and overflow points carry no information
            }
        }
    }
    out.subsolution = out.min_defect >= -1e-4;
    // nested polar quadrature at 1e-9 takes close to a minute per divergent field
    QuadratureConfig qc = cfg;
    qc.rel_tol = std::max(cfg.rel_tol, 1e-6);
    qc.abs_tol = std::max(cfg.abs_tol, 1e-9);
    try {
        out.volume = total_area(ConformalMetric::developing(s.source()), qc).value;
        out.margin = out.volume - 4.0 * kPi;
    } catch (const DivergentIntegralError&) {
        out.divergent = true;
    }
    return out;
}

}  // namespace liouville
