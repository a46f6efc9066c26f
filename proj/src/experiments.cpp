#include "liouville/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>

#include "liouville/covering.hpp"
#include "liouville/descriptor.hpp"
#include "liouville/errors.hpp"
#include "liouville/format.hpp"
#include "liouville/geodesic.hpp"
#include "liouville/parallel.hpp"
#include "liouville/radial.hpp"

namespace liouville {
namespace {

constexpr double kPi = std::numbers::pi;
using Json = nlohmann::json;
namespace fs = std::filesystem;

QuadratureConfig tight(const QuadratureConfig& cfg) {
    QuadratureConfig c = cfg;
    c.rel_tol = std::min(cfg.rel_tol, 1e-12);
    c.abs_tol = std::min(cfg.abs_tol, 1e-14);
    return c;
}

double param_number(const Json& params, const std::string& key, double dflt) {
    if (!params.contains(key)) return dflt;
    const Json& v = params.at(key);
    if (!v.is_number()) throw InvalidConfigError("params." + key + ": expected a number");
    return v.get<double>();
}

std::vector<double> param_numbers(const Json& params, const std::string& key, std::vector<double> dflt) {
    if (!params.contains(key)) return dflt;
    const Json& v = params.at(key);
    if (!v.is_array() || v.empty()) throw InvalidConfigError("params." + key + ": expected a non-empty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            throw InvalidConfigError("params." + key + "[" + std::to_string(i) + "]: expected a number");
        }
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::vector<RadialProfile> param_profiles(const Json& params, const std::string& key,
                                          std::vector<RadialProfile> dflt) {
    if (!params.contains(key)) return dflt;
    const Json& v = params.at(key);
    if (!v.is_array() || v.empty()) throw InvalidConfigError("params." + key + ": expected a non-empty array");
    std::vector<RadialProfile> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(parse_profile(v[i], "params." + key + "[" + std::to_string(i) + "]"));
    }
    return out;
}

GridSpec param_grid(const Json& params, GridSpec dflt) {
    if (!params.contains("grid")) return dflt;
    const Json& g = params.at("grid");
    if (!g.is_object()) throw InvalidConfigError("params.grid: expected an object");
    for (const auto& [k, v] : g.items()) {
        if (k != "nx" && k != "ny" && k != "stencil") throw InvalidConfigError("params.grid." + k + ": unknown field");
        if (!v.is_number_integer()) throw InvalidConfigError("params.grid." + k + ": expected an integer");
    }
    dflt.nx = g.value("nx", dflt.nx);
    dflt.ny = g.value("ny", dflt.ny);
    dflt.stencil = g.value("stencil", dflt.stencil);
    try {
        dflt.validate();
    } catch (const InvalidConfigError& e) {
        throw InvalidConfigError(std::string("params.") + e.what());
    }
    return dflt;
}

bool writing(const ExperimentConfig& cfg) { return !cfg.out_dir.empty(); }

void emit_csv(const ExperimentConfig& cfg, ExperimentResult& res, const std::string& name,
              const std::vector<std::string>& header, const std::vector<std::vector<double>>& cols) {
    if (!writing(cfg)) return;
    write_csv(cfg.out_dir / name, header, cols);
    res.artifacts.push_back(name);
}

void emit_svg(const ExperimentConfig& cfg, ExperimentResult& res, const std::string& name, const PlotSpec& spec,
              const std::vector<Series>& series) {
    if (!writing(cfg)) return;
    write_svg(cfg.out_dir / name, spec, series);
    res.artifacts.push_back(name);
}

std::string tag(std::size_t i) { return std::to_string(i); }

// ---- ellipse -----------------------------------------------------------------

ExperimentResult run_ellipse(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const double t = param_number(cfg.params, "t", 1.0);
    const double step = param_number(cfg.params, "s_step", 0.05);
    const double s_max = param_number(cfg.params, "s_max", 10.0);
    const double s_far = param_number(cfg.params, "s_far", 100.0);
    if (!(t >= 0.0)) throw InvalidConfigError("params.t: must be >= 0");
    if (!(step > 0.0) || !(s_max >= step)) throw InvalidConfigError("params.s_step: need 0 < s_step <= s_max");

    const double a = std::log(t + std::tan(0.25 * kPi - 0.5 * std::atan(t)));
    const double target = kPi + 2.0 * std::atan(t);
    const ConformalMetric m = ConformalMetric::developing(DevelopingFunction(AffineExp{t}));
    const std::size_t n = std::size_t(std::llround(s_max / step));
    std::vector<double> s(n), len(n), excess(n);
    parallel_for(n, [&](std::size_t i) {
        s[i] = step * double(i + 1);
        len[i] = curve_length(m, HalfEllipse{a, s[i]}, cfg.quad).value;
        excess[i] = len[i] - target;
    });
    const double far = curve_length(m, HalfEllipse{a, s_far}, cfg.quad).value - target;
    const std::size_t peak = std::size_t(std::max_element(excess.begin(), excess.end()) - excess.begin());
    bool decreasing = true;
    for (std::size_t i = peak; i + 1 < n; ++i) decreasing = decreasing && excess[i + 1] <= excess[i];
    const double min_excess = *std::min_element(excess.begin(), excess.end());

    res.add("a", a, Provenance::paper);
    res.add("target_distance", target, Provenance::paper);
    res.add("min_excess", min_excess, Provenance::derived);
    res.add("excess_at_s_max", excess.back(), Provenance::derived);
    res.add("excess_at_s_far", far, Provenance::derived);
    res.add("s_peak", s[peak], Provenance::derived);
    res.add("excess_at_s_peak", excess[peak], Provenance::derived);
    res.check("lower_bound", min_excess >= -1e-6, "min over the sweep of l(C_s) - target = " + fmt(min_excess));
    res.check("near_limit_at_s_max", excess.back() < 0.05, "excess at s = " + fmt(s.back()) + ": " + fmt(excess.back()));
    res.check("limit_at_s_far", far < 1e-3, "excess at s = " + fmt(s_far) + ": " + fmt(far));
    res.check("decreasing_after_peak", decreasing,
              "l(C_s) rises until s = " + fmt(s[peak]) + " and is checked non-increasing after it");
    emit_csv(cfg, res, "ellipse.csv", {"s", "length", "excess"}, {s, len, excess});
    PlotSpec spec{"l(C_s) - (pi + 2 atan t), t = " + fmt(t), "s", "excess length", false, 0.0};
    emit_svg(cfg, res, "ellipse.svg", spec, {{"l(C_s) - target", s, excess}});
    return res;
}

// ---- ut-diameter ---------------------------------------------------------------

ExperimentResult run_ut_diameter(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const std::vector<double> ts = param_numbers(cfg.params, "t_values", {0.0, 0.5, 1.0, 2.0, 5.0});
    const double half_width = param_number(cfg.params, "half_width", 40.0);
    const GridSpec grid = param_grid(cfg.params, GridSpec{Box{-half_width, half_width, -kPi, kPi}, 2000, 400, 16});
    std::vector<double> col_t, col_a, col_lo, col_up, col_exact, col_grid;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        if (!(t >= 0.0)) throw InvalidConfigError("params.t_values[" + tag(i) + "]: must be >= 0");
        const UtCertificate c = ut_certificate(t, cfg.quad);
        const double exact = kPi + 2.0 * std::atan(t);
        const ConformalMetric m = ConformalMetric::developing(DevelopingFunction(AffineExp{t}));
        const GridPath gp = grid_distance_upper(m, {c.a, kPi}, {c.a, -kPi}, grid, cfg.quad);
        const std::string k = "t=" + fmt(t);
        res.add(k + ".a", c.a, Provenance::paper);
        res.add(k + ".lower", c.lower, Provenance::paper);
        res.add(k + ".strip_upper", c.upper, Provenance::derived);
        res.add(k + ".grid_upper", gp.length, Provenance::derived);
        res.check(k + ".sandwich", c.upper - c.lower <= 1e-3 && c.lower <= c.upper + 1e-9,
                  "lower " + fmt(c.lower) + ", strip upper " + fmt(c.upper));
        res.check(k + ".grid_path", gp.length <= exact + 0.02 && gp.length >= c.lower - 1e-9,
                  "grid path " + fmt(gp.length) + " against pi + 2 atan t = " + fmt(exact));
        col_t.push_back(t);
        col_a.push_back(c.a);
        col_lo.push_back(c.lower);
        col_up.push_back(c.upper);
        col_exact.push_back(exact);
        col_grid.push_back(gp.length);
        if (writing(cfg)) {
            const std::string name = "witness_t" + tag(i) + ".csv";
            write_witness_csv(cfg.out_dir / name, m, gp.witness, cfg.quad);
            res.artifacts.push_back(name);
        }
    }
    emit_csv(cfg, res, "ut_diameter.csv", {"t", "a", "lower", "strip_upper", "exact", "grid_upper"},
             {col_t, col_a, col_lo, col_up, col_exact, col_grid});
    PlotSpec spec{"diameter of the u_t metric", "t", "diameter", false, std::nullopt};
    emit_svg(cfg, res, "ut_diameter.svg", spec,
             {{"certified lower", col_t, col_lo}, {"strip upper", col_t, col_up}, {"grid path", col_t, col_grid}});
    return res;
}

// ---- expexp-2pi ----------------------------------------------------------------

ExperimentResult run_expexp(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const GridSpec grid = param_grid(cfg.params, GridSpec{Box{-15.0, 2.5, -1.5 * kPi, 0.5 * kPi}, 700, 320, 16});
    const ExpExpCertificate c = expexp_certificate();
    const ConformalMetric m = ConformalMetric::developing(DevelopingFunction(ExpExp{}));
    const double sphere = sphere_lower_bound(m, c.p, c.q);
    const GridPath gp = grid_distance_upper(m, c.p, c.q, grid, cfg.quad);
    res.add("certified_lower", c.bound, Provenance::paper);
    res.add("sphere_lower", sphere, Provenance::paper);
    res.add("grid_upper", gp.length, Provenance::derived);
    res.add("samples_checked", double(c.samples_checked), Provenance::derived);
    res.check("certificate", c.bound == 2.0 * kPi, fmt(double(c.samples_checked)) + " sampled crossings verified");
    res.check("grid_upper", std::isfinite(gp.length) && gp.length >= 2.0 * kPi - 0.02,
              "grid path " + fmt(gp.length) + " against 2 pi");
    if (writing(cfg)) {
        write_witness_csv(cfg.out_dir / "witness.csv", m, gp.witness, cfg.quad);
        res.artifacts.push_back("witness.csv");
    }
    return res;
}

// ---- radial-suite --------------------------------------------------------------

ExperimentResult run_radial_suite(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const auto profiles = param_profiles(
        cfg.params, "profiles",
        {RadialProfile::bubble(1.0), RadialProfile::bubble_shifted(1.0, 0.5), RadialProfile::gaussian_neg()});
    std::vector<Series> l_curves;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const RadialProfile& p = profiles[i];
        const std::string k = p.label();
        const bool bubble = p.kind() == "bubble";
        const Provenance exact = bubble ? Provenance::paper : Provenance::derived;
        const RadialReport rep = compute_report(p, cfg.quad);
        const InequalityReport suite = inequality_suite(rep);
        res.add(k + ".A_inf", rep.A_inf, exact);
        res.add(k + ".R_inf", rep.R_inf, exact);
        res.add(k + ".r0", rep.r0, exact);
        res.add(k + ".l_r0", rep.l_r0, exact);
        res.add(k + ".R_r0", rep.R_r0, exact);
        for (const InequalityCheck& c : suite.checks) {
            if (!c.applicable) continue;
            res.add(k + "." + c.name + ".min_margin", c.min_margin, Provenance::derived);
            std::string where = std::isfinite(c.at_r) ? " at r = " + fmt(c.at_r) : "";
            res.check(k + "." + c.name, c.pass, c.statement + ", min margin " + fmt(c.min_margin) + where);
        }
        try {
            const double esc = escape_diameter_upper(p, cfg.quad);
            res.add(k + ".escape_diameter_upper", esc, Provenance::derived);
            res.check(k + ".escape_diameter", esc <= kPi + 1e-6, "diameter bound " + fmt(esc));
        } catch (const InconclusiveError& e) {
            res.check(k + ".escape_diameter", false, std::string(e.what()) + ", best " + fmt(e.best_found));
        }
        std::vector<std::string> header{"r", "l", "A", "R", "eta"};
        std::vector<std::vector<double>> cols{rep.r, rep.l, rep.A, rep.R, rep.eta};
        for (std::size_t c = 0; c < suite.columns.size(); ++c) {
            header.push_back("margin_" + suite.columns[c]);
            cols.push_back(suite.margin_curves[c]);
        }
        emit_csv(cfg, res, "radial_" + tag(i) + ".csv", header, cols);
        l_curves.push_back({k, rep.r, rep.l});
    }
    PlotSpec spec{"circle length l(r)", "r", "l(r)", true, std::nullopt};
    emit_svg(cfg, res, "radial_lengths.svg", spec, l_curves);
    return res;
}

// ---- nd-suite ------------------------------------------------------------------

ExperimentResult run_nd_suite(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const std::vector<double> dims = param_numbers(cfg.params, "dimensions", {3.0, 4.0, 5.0});
    const auto profiles =
        param_profiles(cfg.params, "profiles", {RadialProfile::bubble(1.0), RadialProfile::bubble_shifted(1.0, 0.5)});
    std::vector<double> grid{0.0};
    for (double r : geomspace(1e-3, 1e3, 400)) grid.push_back(r);
    std::vector<double> c_n, c_idx, c_first, c_second, c_vol, c_sph, c_R;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const RadialProfile& p = profiles[i];
        for (std::size_t d = 0; d < dims.size(); ++d) {
            const int n = int(dims[d]);
            if (double(n) != dims[d] || n < 3) {
                throw InvalidConfigError("params.dimensions[" + tag(d) + "]: expected an integer >= 3");
            }
            std::vector<double> g = grid;
            if (std::isfinite(p.domain_end())) {
                g.erase(std::remove_if(g.begin(), g.end(), [&](double r) { return r > p.domain_end(); }), g.end());
            }
            const NdCheck c = nd_system_check(p, n, g, cfg.quad);
            const std::string k = p.label() + ".n=" + std::to_string(n);
            const Provenance pv = p.kind() == "bubble" ? Provenance::paper : Provenance::derived;
            res.add(k + ".min_margin_first", c.min_margin_first, Provenance::derived);
            res.add(k + ".min_margin_second", c.min_margin_second, Provenance::derived);
            res.add(k + ".R_inf", c.R_inf, pv);
            res.add(k + ".volume", c.volume, pv);
            res.add(k + ".sphere_volume", c.sphere_volume, Provenance::trivial);
            res.check(k, c.pass(), "pointwise " + std::string(c.pointwise_pass ? "ok" : "fails") + ", R_inf " +
                                       fmt(c.R_inf) + ", volume " + fmt(c.volume) + " of " + fmt(c.sphere_volume));
            c_n.push_back(n);
            c_idx.push_back(double(i));
            c_first.push_back(c.min_margin_first);
            c_second.push_back(c.min_margin_second);
            c_vol.push_back(c.volume);
            c_sph.push_back(c.sphere_volume);
            c_R.push_back(c.R_inf);
        }
    }
    emit_csv(cfg, res, "nd_suite.csv",
             {"n", "profile", "min_margin_first", "min_margin_second", "volume", "sphere_volume", "R_inf"},
             {c_n, c_idx, c_first, c_second, c_vol, c_sph, c_R});
    return res;
}

// ---- covering-suite ------------------------------------------------------------

ExperimentResult run_covering_suite(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const QuadratureConfig qc = tight(cfg.quad);
    const std::vector<double> lambdas = param_numbers(cfg.params, "lambdas", {0.25, 0.5, 0.75});
    std::vector<double> c_l, c_a1, c_a2, c_lhs, c_rhs, c_m, c_dm;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double l = lambdas[i];
        if (!(l > 0.0 && l < 1.0)) throw InvalidConfigError("params.lambdas[" + tag(i) + "]: must lie in (0, 1)");
        const std::string k = "lambda=" + fmt(l);
        const RadialPair pair{RadialProfile::bubble(l), RadialProfile::bubble(1.0 / l), 1.0};
        const RadialPair dual{RadialProfile::bubble(1.0 / l), RadialProfile::bubble(l), 1.0};
        const CoveringSum s = covering_sum(pair, qc);
        const CoveringSum d = dual_covering_sum(dual, qc);
        res.add(k + ".covering_margin", s.margin, Provenance::derived);
        res.add(k + ".covering_lhs", s.lhs, Provenance::derived);
        res.add(k + ".dual_margin", d.margin, Provenance::derived);
        res.check(k + ".complementary_caps", std::abs(s.margin) <= 1e-8 && std::abs(s.lhs - 4.0 * kPi) <= 1e-8,
                  "margin " + fmt(s.margin) + ", sum - 4 pi " + fmt(s.lhs - 4.0 * kPi));
        res.check(k + ".dual_complementary_caps", std::abs(d.margin) <= 1e-8 && std::abs(d.lhs - 4.0 * kPi) <= 1e-8,
                  "margin " + fmt(d.margin));
        const double u_max = pair.u2.u(0.0) - pair.u1.u(0.0);
        const LevelSetProfile ls = level_set_profile(pair, 1.0, linspace(0.0, u_max, 41), qc);
        res.add(k + ".alpha0_plus_beta0", ls.alpha.front() + ls.beta.front(), Provenance::derived);
        res.check(k + ".level_sets", ls.monotone && std::abs(ls.alpha.front() + ls.beta.front() - 4.0 * kPi) <= 1e-8,
                  "alpha, beta non-increasing; relation residual " + fmt(ls.relation_residual));
        if (i == 0) {
            emit_csv(cfg, res, "level_sets.csv", {"t", "alpha", "beta"}, {ls.t, ls.alpha, ls.beta});
            PlotSpec spec{"level-set functionals, " + k, "t", "value", false, std::nullopt};
            emit_svg(cfg, res, "level_sets.svg", spec, {{"alpha(t)", ls.t, ls.alpha}, {"beta(t)", ls.t, ls.beta}});
        }
        const IsoperimetricResult iso = radial_isoperimetric(pair.u1, {{0.0, 1.0}}, qc);
        res.check(k + ".isoperimetric_disk", iso.pass, "relative margin " + fmt(iso.margin));
        c_l.push_back(l);
        c_a1.push_back(s.area1);
        c_a2.push_back(s.area2);
        c_lhs.push_back(s.lhs);
        c_rhs.push_back(s.rhs);
        c_m.push_back(s.margin);
        c_dm.push_back(d.margin);
    }
    emit_csv(cfg, res, "covering.csv", {"lambda", "area1", "area2", "lhs", "rhs", "margin", "dual_margin"},
             {c_l, c_a1, c_a2, c_lhs, c_rhs, c_m, c_dm});

    const RadialProfile base = RadialProfile::bubble_shifted(1.0, 0.2);
    const StrictPair sp = construct_strict_pair(base, 1.0, Orientation::primal);
    const CoveringSum strict = covering_sum(sp.pair, qc);
    res.add("strict_pair.amplitude", sp.amplitude, Provenance::derived);
    res.add("strict_pair.margin", strict.margin, Provenance::derived);
    res.check("strict_pair", strict.margin > 0.0,
              "bump amplitude " + fmt(sp.amplitude) + ", margin " + fmt(strict.margin));

    const RadialPair closed{base, RadialProfile::bubble_shifted(2.0, std::log(0.8) + 0.2), 1.0};
    const CoveringSum cs = covering_sum(closed, qc);
    res.add("closed_pair.margin", cs.margin, Provenance::derived);
    res.check("closed_pair", cs.margin > 0.0, "margin " + fmt(cs.margin));

    const RadialPair dual_closed{RadialProfile::bubble(1.0), RadialProfile::bubble_shifted(0.5, std::log(1.25)), 2.0};
    const CoveringSum dc = dual_covering_sum(dual_closed, qc);
    res.add("dual_closed_pair.margin", dc.margin, Provenance::derived);
    res.check("dual_closed_pair", dc.margin > 0.0, "margin " + fmt(dc.margin));

    const RadialPair same{RadialProfile::bubble(1.0), RadialProfile::bubble(1.0), 1.0};
    res.check("identical_pair_rejected", !hypotheses_check(same, pair_grid(same)).ordered,
              "u1 = u2 has no strict gap");
    return res;
}

// ---- subsolution-volume ---------------------------------------------------------

ExperimentResult run_subsolution(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const QuadratureConfig qc = tight(cfg.quad);
    const std::vector<double> shifts = param_numbers(cfg.params, "shifts", {0.1, 0.3});
    std::vector<double> c_c, c_vol, c_exact, c_m;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        const double c = shifts[i];
        if (!(c > 0.0)) throw InvalidConfigError("params.shifts[" + tag(i) + "]: must be positive");
        const SubsolutionVolume v = subsolution_volume_check(RadialProfile::bubble_shifted(1.0, -c), qc);
        const double exact = 4.0 * kPi * std::exp(2.0 * c);
        const std::string k = "c=" + fmt(c);
        res.add(k + ".volume", v.volume, Provenance::derived);
        res.add(k + ".margin", v.margin, Provenance::derived);
        res.check(k, v.subsolution && v.margin > 0.0 && std::abs(v.volume / exact - 1.0) <= 1e-7,
                  "volume " + fmt(v.volume) + " against 4 pi e^{2c} = " + fmt(exact));
        c_c.push_back(c);
        c_vol.push_back(v.volume);
        c_exact.push_back(exact);
        c_m.push_back(v.margin);
    }
    const SubsolutionVolume b = subsolution_volume_check(RadialProfile::bubble(1.0), qc);
    res.add("bubble.volume", b.volume, Provenance::paper);
    res.add("bubble.margin", b.margin, Provenance::paper);
    res.check("bubble", b.subsolution && std::abs(b.margin) <= 1e-8, "margin " + fmt(b.margin));

    const SubsolutionVolume ae = subsolution_volume_check(SolutionField(DevelopingFunction(AffineExp{1.0})), cfg.quad);
    res.check("affine_exp_divergent", ae.subsolution && ae.divergent, "volume reported divergent");
    emit_csv(cfg, res, "subsolution.csv", {"c", "volume", "exact", "margin"}, {c_c, c_vol, c_exact, c_m});
    return res;
}

struct Entry {
    ExperimentInfo info;
    std::function<ExperimentResult(const ExperimentConfig&)> run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {{"ellipse", "length of the half ellipses C_s joining (a, pi) and (a, -pi) under u_1",
          {"t", "s_step", "s_max", "s_far"}},
         run_ellipse},
        {{"ut-diameter", "certified diameter sandwich and grid paths for the u_t family",
          {"t_values", "half_width", "grid"}},
         run_ut_diameter},
        {{"expexp-2pi", "2 pi lower bound under f = e^{e^z} and a grid path between the same points", {"grid"}},
         run_expexp},
        {{"radial-suite", "radial inequality suite for built-in or supplied profiles", {"profiles"}},
         run_radial_suite},
        {{"nd-suite", "higher-dimensional radial system, diameter and volume", {"dimensions", "profiles"}},
         run_nd_suite},
        {{"covering-suite", "sphere covering inequalities, level sets and constructed strict pairs", {"lambdas"}},
         run_covering_suite},
        {{"subsolution-volume", "total area of subsolutions against 4 pi", {"shifts"}}, run_subsolution},
    };
    return e;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_registry() {
    static const std::vector<ExperimentInfo> infos = [] {
        std::vector<ExperimentInfo> v;
        for (const Entry& e : entries()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

const ExperimentInfo* find_experiment(const std::string& name) {
    for (const ExperimentInfo& i : experiment_registry()) {
        if (i.name == name) return &i;
    }
    return nullptr;
}

ExperimentConfig make_experiment_config(const std::string& name, const Json& doc) {
    const ExperimentInfo* info = find_experiment(name);
    if (info == nullptr) throw InvalidConfigError("experiment: unknown name \"" + name + "\"");
    ExperimentConfig cfg;
    cfg.name = name;
    if (doc.is_null()) return cfg;
    if (!doc.is_object()) throw InvalidConfigError("config: expected an object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "experiment") {
            if (!value.is_string() || value.get<std::string>() != name) {
                throw InvalidConfigError("experiment: config is for a different experiment");
            }
        } else if (key == "quadrature") {
            if (!value.is_object()) throw InvalidConfigError("quadrature: expected an object");
            for (const auto& [k, v] : value.items()) {
                const std::string path = "quadrature." + k;
                if (k == "max_subdivisions" || k == "initial_panels") {
                    if (!v.is_number_integer()) throw InvalidConfigError(path + ": expected an integer");
                    (k == "max_subdivisions" ? cfg.quad.max_subdivisions : cfg.quad.initial_panels) = v.get<int>();
                } else if (k == "rel_tol" || k == "abs_tol" || k == "improper_cutoff_growth") {
                    if (!v.is_number()) throw InvalidConfigError(path + ": expected a number");
                    const double x = v.get<double>();
                    if (k == "rel_tol") cfg.quad.rel_tol = x;
                    else if (k == "abs_tol") cfg.quad.abs_tol = x;
                    else cfg.quad.improper_cutoff_growth = x;
                } else {
                    throw InvalidConfigError(path + ": unknown field");
                }
            }
            try {
                cfg.quad.validate();
            } catch (const InvalidConfigError& e) {
                throw InvalidConfigError(std::string("quadrature: ") + e.what());
            }
        } else if (key == "params") {
            if (!value.is_object()) throw InvalidConfigError("params: expected an object");
            for (const auto& [k, v] : value.items()) {
                (void)v;
                if (std::find(info->params.begin(), info->params.end(), k) == info->params.end()) {
                    throw InvalidConfigError("params." + k + ": not a parameter of " + name);
                }
            }
            cfg.params = value;
        } else {
            throw InvalidConfigError(key + ": unknown field");
        }
    }
    return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.quad.validate();
    for (const Entry& e : entries()) {
        if (e.info.name != cfg.name) continue;
        ExperimentResult res = e.run(cfg);
        res.experiment = cfg.name;
        if (writing(cfg)) {
            res.artifacts.push_back("report.json");
            fs::create_directories(cfg.out_dir);
            std::ofstream out(cfg.out_dir / "report.json");
            out << res.to_json().dump(2) << '\n';
            if (!out) throw Error("cannot write " + (cfg.out_dir / "report.json").string());
        }
        return res;
    }
    throw InvalidConfigError("experiment: unknown name \"" + cfg.name + "\"");
}

void write_witness_csv(const fs::path& path, const ConformalMetric& m, const Polyline& poly,
                       const QuadratureConfig& cfg) {
    const std::size_t n = poly.points.size();
    std::vector<double> theta(n, 0.0), x(n), y(n), len(n, 0.0);
    double euclid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = poly.points[i].x;
        y[i] = poly.points[i].y;
        if (i > 0) {
            euclid += norm(poly.points[i] - poly.points[i - 1]);
            theta[i] = euclid;
            len[i] = len[i - 1] + curve_length(m, Segment{poly.points[i - 1], poly.points[i]}, cfg).value;
        }
    }
    if (euclid > 0.0) {
        for (double& t : theta) t /= euclid;
    }
    write_csv(path, {"theta", "x", "y", "length"}, {theta, x, y, len});
}

}  // namespace liouville
