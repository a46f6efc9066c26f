#include "liouville/descriptor.hpp"

#include <fstream>
#include <sstream>

#include "liouville/errors.hpp"
#include "liouville/format.hpp"
#include "liouville/radial.hpp"

namespace liouville {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InvalidConfigError(path + ": " + msg);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

double number_at(const Json& j, const std::string& key, const std::string& path) {
    return number(field(j, key, path), path + "." + key);
}

double number_or(const Json& j, const std::string& key, double dflt, const std::string& path) {
    if (!j.contains(key)) return dflt;
    return number(j.at(key), path + "." + key);
}

// a real number or [re, im]
Complex complex_at(const Json& j, const std::string& key, Complex dflt, const std::string& path) {
    if (!j.contains(key)) return dflt;
    const Json& v = j.at(key);
    const std::string p = path + "." + key;
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    fail(p, "expected a number or [re, im]");
}

std::vector<double> numbers(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::string kind_of(const Json& j, const std::string& path) {
    const Json& k = field(j, "kind", path);
    if (!k.is_string()) fail(path + ".kind", "expected a string");
    return k.get<std::string>();
}

void check_type(const Json& j, const std::string& want, const std::string& path) {
    if (j.is_object() && j.contains("type")) {
        if (!j.at("type").is_string() || j.at("type").get<std::string>() != want) {
            fail(path + ".type", "expected \"" + want + "\"");
        }
    }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

DevelopingFunction parse_devfn(const Json& j, const std::string& path) {
    check_type(j, "devfn", path);
    const std::string kind = kind_of(j, path);
    Similarity sim;
    if (j.contains("similarity")) {
        const Json& s = j.at("similarity");
        const std::string sp = path + ".similarity";
        if (!s.is_object()) fail(sp, "expected an object");
        sim.translate = complex_at(s, "translate", {0.0, 0.0}, sp);
        sim.rotate = number_or(s, "rotate", 0.0, sp);
        sim.scale = number_or(s, "scale", 1.0, sp);
        if (!(sim.scale > 0.0)) fail(sp + ".scale", "must be positive");
    }
    if (kind == "bubble") {
        const double lambda = number_at(j, "lambda", path);
        if (!(lambda > 0.0)) fail(path + ".lambda", "must be positive");
        return DevelopingFunction(DevelopingFunction::bubble(lambda).variant(), sim);
    }
    if (kind == "mobius") {
        return DevelopingFunction(Mobius{complex_at(j, "a", {1.0, 0.0}, path), complex_at(j, "b", {0.0, 0.0}, path),
                                         complex_at(j, "c", {0.0, 0.0}, path), complex_at(j, "d", {1.0, 0.0}, path)},
                                  sim);
    }
    if (kind == "affine_exp") {
        const double t = number_at(j, "t", path);
        if (!(t >= 0.0)) fail(path + ".t", "must be >= 0");
        return DevelopingFunction(AffineExp{t}, sim);
    }
    if (kind == "exp_exp") return DevelopingFunction(ExpExp{}, sim);
    if (kind == "one_dim") {
        return DevelopingFunction(OneDim{complex_at(j, "p", {1.0, 0.0}, path), complex_at(j, "q", {0.0, 0.0}, path),
                                         number_or(j, "c", 1.0, path)},
                                  sim);
    }
    fail(path + ".kind", "unknown developing function \"" + kind + "\"");
}

RadialProfile parse_profile(const Json& j, const std::string& path) {
    check_type(j, "profile", path);
    const std::string kind = kind_of(j, path);
    if (kind == "bubble" || kind == "bubble_shifted") {
        const double lambda = number_at(j, "lambda", path);
        if (!(lambda > 0.0)) fail(path + ".lambda", "must be positive");
        if (kind == "bubble") return RadialProfile::bubble(lambda);
        return RadialProfile::bubble_shifted(lambda, number_at(j, "c", path));
    }
    if (kind == "gaussian_neg") return RadialProfile::gaussian_neg();
    if (kind == "spline") {
        std::vector<double> r = numbers(field(j, "r", path), path + ".r");
        std::vector<double> u = numbers(field(j, "u", path), path + ".u");
        if (r.size() != u.size()) fail(path + ".u", "length differs from r");
        if (r.size() < 2) fail(path + ".r", "need at least two knots");
        try {
            if (j.contains("du")) {
                std::vector<double> du = numbers(j.at("du"), path + ".du");
                if (du.size() != r.size()) fail(path + ".du", "length differs from r");
                return RadialProfile::spline(TabulatedSpline::hermite(std::move(r), std::move(u), std::move(du)));
            }
            return RadialProfile::spline(TabulatedSpline::interpolate(std::move(r), std::move(u)));
        } catch (const InvalidConfigError& e) {
            fail(path + ".r", e.what());
        }
    }
    if (kind == "bumped") {
        const RadialProfile base = parse_profile(field(j, "base", path), path + ".base");
        const double radius = number_at(j, "radius", path);
        if (!(radius > 0.0)) fail(path + ".radius", "must be positive");
        return RadialProfile::bumped(base, number_at(j, "amplitude", path), radius);
    }
    fail(path + ".kind", "unknown profile \"" + kind + "\"");
}

ConformalMetric parse_metric(const Json& j, const std::string& path) {
    check_type(j, "metric", path);
    const std::string kind = kind_of(j, path);
    if (kind == "developing") return ConformalMetric::developing(parse_devfn(field(j, "devfn", path), path + ".devfn"));
    if (kind == "radial") return ConformalMetric::radial(parse_profile(field(j, "profile", path), path + ".profile"));
    if (kind == "ut") {
        const double t = number_at(j, "t", path);
        if (!(t >= 0.0)) fail(path + ".t", "must be >= 0");
        return ConformalMetric::ut(t);
    }
    if (kind == "flat") return ConformalMetric::flat();
    fail(path + ".kind", "unknown metric \"" + kind + "\"");
}

RadialPair parse_pair(const Json& j, const std::string& path) {
    check_type(j, "pair", path);
    const double r = number_at(j, "r", path);
    if (!(r > 0.0)) fail(path + ".r", "must be positive");
    return RadialPair{parse_profile(field(j, "u1", path), path + ".u1"),
                      parse_profile(field(j, "u2", path), path + ".u2"), r};
}

Json to_json(const DevelopingFunction& f) {
    struct V {
        Json operator()(const Mobius& m) const {
            return {{"kind", "mobius"}, {"a", complex_json(m.a)}, {"b", complex_json(m.b)},
                    {"c", complex_json(m.c)}, {"d", complex_json(m.d)}};
        }
        Json operator()(const AffineExp& a) const { return {{"kind", "affine_exp"}, {"t", a.t}}; }
        Json operator()(const ExpExp&) const { return {{"kind", "exp_exp"}}; }
        Json operator()(const OneDim& o) const {
            return {{"kind", "one_dim"}, {"p", complex_json(o.p)}, {"q", complex_json(o.q)}, {"c", o.c}};
        }
    };
    Json j = std::visit(V{}, f.variant());
    j["type"] = "devfn";
    const Similarity& s = f.similarity();
    if (!s.is_identity()) {
        j["similarity"] = {{"translate", complex_json(s.translate)}, {"rotate", s.rotate}, {"scale", s.scale}};
    }
    return j;
}

Json to_json(const RadialProfile& p) {
    struct V {
        Json operator()(const Bubble& b) const { return {{"kind", "bubble"}, {"lambda", b.lambda}}; }
        Json operator()(const BubbleShifted& b) const {
            return {{"kind", "bubble_shifted"}, {"lambda", b.lambda}, {"c", b.c}};
        }
        Json operator()(const GaussianNeg&) const { return {{"kind", "gaussian_neg"}}; }
        Json operator()(const TabulatedSpline& s) const {
            std::vector<double> u, du;
            for (double r : s.knots()) {
                u.push_back(s.u(r));
                du.push_back(s.du(r));
            }
            return {{"kind", "spline"}, {"r", s.knots()}, {"u", u}, {"du", du}};
        }
        Json operator()(const Bumped& b) const {
            return {{"kind", "bumped"}, {"base", to_json(*b.base)}, {"amplitude", b.amplitude}, {"radius", b.radius}};
        }
    };
    Json j = std::visit(V{}, p.variant());
    j["type"] = "profile";
    return j;
}

DescriptorSummary validate_descriptor(const Json& j) {
    if (!j.is_object()) fail("descriptor", "expected an object");
    const Json& t = field(j, "type", "descriptor");
    if (!t.is_string()) fail("descriptor.type", "expected a string");
    DescriptorSummary out;
    out.type = t.get<std::string>();
    std::ostringstream detail;
    if (out.type == "devfn") {
        const DevelopingFunction f = parse_devfn(j, "descriptor");
        const ValidationReport rep = validate(f, Box{-4.0, 4.0, -4.0, 4.0}, 41);
        if (rep.near_vanishing_deriv) {
            throw InvalidFunctionError("f' nearly vanishes at (" + fmt(rep.argmin.x) + ", " + fmt(rep.argmin.y) + ")");
        }
        out.label = f.kind();
        detail << "min |f'| on [-4,4]^2 = " << fmt(rep.min_abs_deriv) << " (" << rep.samples_used
               << " samples, " << rep.samples_skipped << " skipped)";
    } else if (out.type == "profile") {
        const RadialProfile p = parse_profile(j, "descriptor");
        out.label = p.label();
        std::vector<double> grid{0.0};
        const double end = std::min(p.domain_end(), 1e3);
        for (double r : geomspace(std::min(1e-3, 0.5 * end), end, 400)) grid.push_back(r);
        try {
            const SupersolutionCheck sc = supersolution_check(p, grid);
            detail << "supersolution on sample grid: " << (sc.pass ? "yes" : "no") << " (min margin "
                   << fmt(sc.min_margin) << " at r = " << fmt(sc.at) << ")";
        } catch (const NeedsSmoothingError& e) {
            detail << "supersolution check skipped: " << e.what();
        }
    } else if (out.type == "metric") {
        const ConformalMetric m = parse_metric(j, "descriptor");
        out.label = m.label();
        detail << "u(0, 0) = " << fmt(m.u({0.0, 0.0}));
    } else if (out.type == "pair") {
        const RadialPair pair = parse_pair(j, "descriptor");
        out.label = pair.u1.label() + " / " + pair.u2.label() + ", r = " + fmt(pair.r);
        const HypothesesCheck h = hypotheses_check(pair, pair_grid(pair), Orientation::primal);
        const HypothesesCheck d = hypotheses_check(pair, pair_grid(pair), Orientation::dual);
        detail << "primal hypotheses: " << (h.all_pass() ? "pass" : "fail") << ", dual hypotheses: "
               << (d.all_pass() ? "pass" : "fail");
    } else {
        fail("descriptor.type", "expected devfn, profile, metric or pair");
    }
    out.detail = detail.str();
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfigError(path + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidConfigError(path + ": " + e.what());
    }
}

}  // namespace liouville
