#include "liouville/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <unordered_map>
#include <utility>

#include "liouville/errors.hpp"
#include "liouville/parallel.hpp"
#include "liouville/radial.hpp"

namespace liouville {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Offset {
    int di, dj;
};
constexpr Offset kHalfStencil[8] = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}, {2, 1}, {1, 2}, {-1, 2}, {-2, 1}};

double segment_length(const ConformalMetric& m, Point2 a, Point2 b, const QuadratureConfig& cfg) {
    return curve_length(m, Segment{a, b}, cfg).value;
}

double path_length(const ConformalMetric& m, const Polyline& p, const QuadratureConfig& cfg) {
    return curve_length(m, p, cfg).value;
}

}  // namespace

std::string to_string(LowerKind k) {
    switch (k) {
        case LowerKind::sphere_pullback: return "sphere_pullback";
        case LowerKind::topological_certificate: return "topological_certificate";
        case LowerKind::trivial: return "trivial";
    }
    return "trivial";
}

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) throw InvalidConfigError("grid: nx and ny must be >= 2");
    if (stencil != 8 && stencil != 16) throw InvalidConfigError("grid: stencil must be 8 or 16");
    if (!(box.x_max > box.x_min) || !(box.y_max > box.y_min)) {
        throw InvalidConfigError("grid: box must have positive extent");
    }
}

double sphere_lower_bound(const ConformalMetric& m, Point2 p, Point2 q) {
    if (p == q) return 0.0;
    return sphere_distance(pushforward(m, p).point, pushforward(m, q).point);
}

GridPath grid_distance_upper(const ConformalMetric& m, Point2 p, Point2 q, const GridSpec& grid,
                             const QuadratureConfig& cfg) {
    grid.validate();
    if (!grid.box.contains(p) || !grid.box.contains(q)) {
        throw DomainError("grid_distance_upper: P or Q outside the grid box");
    }
    GridPath out;
    if (p == q) {
        out.witness.points = {p};
        return out;
    }
    const int nx = grid.nx;
    const int ny = grid.ny;
    const double dx = (grid.box.x_max - grid.box.x_min) / (nx - 1);
    const double dy = (grid.box.y_max - grid.box.y_min) / (ny - 1);
    auto node_point = [&](int i, int j) -> Point2 {
        return {i == nx - 1 ? grid.box.x_max : grid.box.x_min + i * dx,
                j == ny - 1 ? grid.box.y_max : grid.box.y_min + j * dy};
    };
    const int K = grid.stencil / 2;
    const std::size_t n_grid = std::size_t(nx) * std::size_t(ny);

    QuadratureConfig edge_cfg = cfg;
    edge_cfg.initial_panels = 1;
    std::vector<double> weight(n_grid * K, kInf);
    parallel_for(std::size_t(ny), [&](std::size_t jj) {
        const int j = int(jj);
        for (int i = 0; i < nx; ++i) {
            const std::size_t v = std::size_t(j) * nx + i;
            for (int k = 0; k < K; ++k) {
                const int i2 = i + kHalfStencil[k].di;
                const int j2 = j + kHalfStencil[k].dj;
                if (i2 < 0 || i2 >= nx || j2 >= ny) continue;
                weight[v * K + k] = segment_length(m, node_point(i, j), node_point(i2, j2), edge_cfg);
            }
        }
    });

    // P and Q: reuse a grid node when they sit on one, else add a node
    // joined to all grid nodes within two cells.
    std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, double>>> extra;
    std::vector<Point2> extra_points;
    auto attach = [&](Point2 z) -> std::size_t {
        const double fi = (z.x - grid.box.x_min) / dx;
        const double fj = (z.y - grid.box.y_min) / dy;
        const double ri = std::round(fi);
        const double rj = std::round(fj);
        if (std::abs(fi - ri) < 1e-9 && std::abs(fj - rj) < 1e-9) {
            return std::size_t(rj) * nx + std::size_t(ri);
        }
        const std::size_t id = n_grid + extra_points.size();
        extra_points.push_back(z);
        for (int j = int(std::ceil(fj - 2.0)); j <= int(std::floor(fj + 2.0)); ++j) {
            for (int i = int(std::ceil(fi - 2.0)); i <= int(std::floor(fi + 2.0)); ++i) {
                if (i < 0 || i >= nx || j < 0 || j >= ny) continue;
                const std::size_t v = std::size_t(j) * nx + i;
                const double w = segment_length(m, z, node_point(i, j), cfg);
                extra[id].push_back({v, w});
                extra[v].push_back({id, w});
            }
        }
        return id;
    };
    const std::size_t src = attach(p);
    const std::size_t dst = attach(q);
    if (src >= n_grid && dst >= n_grid &&
        std::abs(p.x - q.x) <= 2.0 * dx && std::abs(p.y - q.y) <= 2.0 * dy) {
        const double w = segment_length(m, p, q, cfg);
        extra[src].push_back({dst, w});
        extra[dst].push_back({src, w});
    }
    const std::size_t n_total = n_grid + extra_points.size();
    auto point_of = [&](std::size_t v) {
        if (v >= n_grid) return extra_points[v - n_grid];
        return node_point(int(v % nx), int(v / nx));
    };

    std::vector<double> dist(n_total, kInf);
    std::vector<std::size_t> parent(n_total, n_total);
    std::vector<char> done(n_total, 0);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0.0;
    heap.push({0.0, src});
    auto relax = [&](std::size_t from, std::size_t to, double w) {
        const double d = dist[from] + w;
        if (d < dist[to]) {
            dist[to] = d;
            parent[to] = from;
            heap.push({d, to});
        }
    };
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (done[v]) continue;
        done[v] = 1;
        ++out.nodes_settled;
        if (v == dst) break;
        if (v < n_grid) {
            const int i = int(v % nx);
            const int j = int(v / nx);
            for (int k = 0; k < K; ++k) {
                const int di = kHalfStencil[k].di;
                const int dj = kHalfStencil[k].dj;
                if (i + di >= 0 && i + di < nx && j + dj < ny) {
                    relax(v, v + std::size_t(dj) * nx + di, weight[v * K + k]);
                }
                if (i - di >= 0 && i - di < nx && j - dj >= 0) {
                    const std::size_t u = v - std::size_t(dj) * nx - di;
                    relax(v, u, weight[u * K + k]);
                }
            }
        }
        if (auto it = extra.find(v); it != extra.end()) {
            for (const auto& [u, w] : it->second) relax(v, u, w);
        }
    }
    if (!std::isfinite(dist[dst])) throw DomainError("grid_distance_upper: Q is unreachable");

    std::vector<Point2> pts;
    for (std::size_t v = dst; v != n_total; v = parent[v]) pts.push_back(point_of(v));
    std::reverse(pts.begin(), pts.end());
    out.witness.points = std::move(pts);
    const QuadResult len = curve_length(m, out.witness, cfg);
    out.length = len.value;
    out.error = len.error;
    return out;
}

Polyline refine_path(const ConformalMetric& m, const Polyline& path, const QuadratureConfig& cfg) {
    if (path.points.size() < 3) return path;
    Polyline cur = path;
    const double start = path_length(m, path, cfg);
    double total = start;
    static constexpr Point2 kDirs[8] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                        {0.7071067811865476, 0.7071067811865476},
                                        {-0.7071067811865476, 0.7071067811865476},
                                        {0.7071067811865476, -0.7071067811865476},
                                        {-0.7071067811865476, -0.7071067811865476}};
    // per-vertex step, kept between sweeps
    std::vector<double> step(cur.points.size(), 0.0), floor(cur.points.size(), 0.0);
    for (std::size_t k = 1; k + 1 < cur.points.size(); ++k) {
        const Point2 a = cur.points[k - 1], v = cur.points[k], b = cur.points[k + 1];
        step[k] = 0.25 * std::min(norm(v - a), norm(b - v));
        if (step[k] == 0.0) step[k] = 0.25 * norm(b - a);
        floor[k] = step[k] * 0x1p-24;
    }
    for (int sweep = 0; sweep < 200; ++sweep) {
        bool any = false;
        for (std::size_t k = 1; k + 1 < cur.points.size(); ++k) {
            const Point2 a = cur.points[k - 1];
            const Point2 b = cur.points[k + 1];
            Point2 v = cur.points[k];
            auto local = [&](Point2 c) {
                try {
                    return segment_length(m, a, c, cfg) + segment_length(m, c, b, cfg);
                } catch (const ToleranceNotMetError&) {
                    return kInf;
                }
            };
            double best = local(v);
            double h = std::max(step[k], 2.0 * floor[k]);
            const double h_max = std::max(h, norm(b - a));
            // expand after a success, halve after a failure; three failures in a row end the poll
            for (int it = 0, fails = 0; it < 200 && fails < 3 && h > floor[k]; ++it) {
                bool moved = false;
                for (const Point2& d : kDirs) {
                    const Point2 c = v + h * d;
                    const double val = local(c);
                    // gains below the quadrature tolerance are noise
                    if (val < best - 0.1 * cfg.rel_tol * best) {
                        best = val;
                        v = c;
                        moved = true;
                        break;
                    }
                }
                any = any || moved;
                fails = moved ? 0 : fails + 1;
                h = moved ? std::min(2.0 * h, h_max) : 0.5 * h;
            }
            step[k] = h;
            cur.points[k] = v;
        }
        if (!any) break;
        const double next = path_length(m, cur, cfg);
        const bool small_gain = total - next < 1e-8 * total;
        total = std::min(total, next);
        if (small_gain) break;
    }
    return path_length(m, cur, cfg) <= start ? cur : path;
}

DistanceEstimate distance_estimate(const ConformalMetric& m, Point2 p, Point2 q,
                                   const GridSpec& grid, const QuadratureConfig& cfg) {
    DistanceEstimate est;
    const GridPath gp = grid_distance_upper(m, p, q, grid, cfg);
    const Polyline refined = refine_path(m, gp.witness, cfg);
    const double refined_len = path_length(m, refined, cfg);
    if (refined_len < gp.length) {
        est.upper = refined_len;
        est.witness = refined;
    } else {
        est.upper = gp.length;
        est.witness = gp.witness;
    }
    if (m.solution() != nullptr) {
        est.lower = sphere_lower_bound(m, p, q);
        est.lower_kind = LowerKind::sphere_pullback;
    }
    return est;
}

StripBound strip_diameter_upper(const ConformalMetric& m, const QuadratureConfig& cfg) {
    // the rectangle argument needs the vertical sides to vanish at both ends
    for (double side : {-1.0, 1.0}) {
        double prev = kInf;
        for (double x : {10.0, 20.0, 40.0}) {
            const double v = vertical_mass(m, side * x, -kPi, kPi, cfg).value;
            if (v > prev * (1.0 + 1e-12) + 1e-300) {
                throw BoundNotApplicableError("strip bound: vertical mass does not decrease as |x| grows");
            }
            prev = v;
        }
        if (prev > 1e-8) {
            throw BoundNotApplicableError("strip bound: vertical mass does not vanish at |x| = 40");
        }
    }
    StripBound out;
    const std::size_t n = 512;
    out.y_samples.resize(n);
    out.mass_samples.resize(n);
    const double step = 2.0 * kPi / double(n);
    parallel_for(n, [&](std::size_t i) {
        out.y_samples[i] = -kPi + step * double(i);
        out.mass_samples[i] = horizontal_mass(m, out.y_samples[i], cfg).value;
    });
    const std::size_t ib = std::size_t(
        std::max_element(out.mass_samples.begin(), out.mass_samples.end()) - out.mass_samples.begin());
    auto mass = [&](double y) { return horizontal_mass(m, y, cfg).value; };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = out.y_samples[ib] - step;
    double hi = out.y_samples[ib] + step;
    double c = hi - phi * (hi - lo);
    double d = lo + phi * (hi - lo);
    double fc = mass(c);
    double fd = mass(d);
    for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = mass(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = mass(d);
        }
    }
    out.value = out.mass_samples[ib];
    out.y_star = out.y_samples[ib];
    if (std::max(fc, fd) > out.value) {
        out.value = std::max(fc, fd);
        out.y_star = fc >= fd ? c : d;
    }
    return out;
}

UtCertificate ut_certificate(double t, const QuadratureConfig& cfg) {
    if (!(t >= 0.0)) throw DomainError("ut_certificate: t must be >= 0");
    UtCertificate out;
    out.t = t;
    const double alpha = std::atan(t);
    out.a = std::log(t + std::tan(0.25 * kPi - 0.5 * alpha));
    out.lower = kPi + 2.0 * alpha;

    const ConformalMetric m = ConformalMetric::developing(DevelopingFunction(AffineExp{t}));
    const SpherePoint expect{-std::cos(alpha), 0.0, -std::sin(alpha)};
    for (double y : {kPi, -kPi}) {
        const SpherePoint s = pushforward(m, {out.a, y}).point;
        if (std::abs(s.X - expect.X) > 1e-12 || std::abs(s.Y - expect.Y) > 1e-12 ||
            std::abs(s.Z - expect.Z) > 1e-12) {
            throw CertificateFailedError("ut_certificate: image of (a, +-pi) is not (-cos a, 0, -sin a)");
        }
    }
    const double need = 0.5 * kPi + alpha - 1e-12;
    // every crossing of the x-axis, written as f = tan(beta) with beta in (alpha, pi/2)
    for (int k = 1; k < 1000; ++k) {
        const double beta = alpha + (0.5 * kPi - alpha) * k / 1000.0;
        if (sphere_distance(expect, stereo_inv(Complex{std::tan(beta), 0.0})) < need) {
            throw CertificateFailedError("ut_certificate: angle bound fails at a sampled beta");
        }
        ++out.samples_checked;
    }
    for (double b : linspace(-10.0, 10.0, 1001)) {
        if (sphere_distance(expect, pushforward(m, {b, 0.0}).point) < need) {
            throw CertificateFailedError("ut_certificate: angle bound fails at a sampled crossing");
        }
        ++out.samples_checked;
    }
    const StripBound sb = strip_diameter_upper(m, cfg);
    out.upper = sb.value;
    out.y_star = sb.y_star;
    return out;
}

ExpExpCertificate expexp_certificate() {
    ExpExpCertificate out;
    out.p = {std::log(kPi), 0.5 * kPi};
    out.q = {std::log(kPi), -1.5 * kPi};
    const DevelopingFunction f(ExpExp{});
    const ConformalMetric m = ConformalMetric::developing(f);
    const SpherePoint west{-1.0, 0.0, 0.0};
    for (Point2 z : {out.p, out.q}) {
        const SpherePoint s = pushforward(m, z).point;
        if (std::abs(s.X - west.X) > 1e-12 || std::abs(s.Y) > 1e-12 || std::abs(s.Z) > 1e-12) {
            throw CertificateFailedError("expexp_certificate: f(P) or f(Q) is not -1");
        }
    }
    const auto xs = linspace(-10.0, 10.0, 2001);
    std::vector<SpherePoint> upper, lower;
    for (double b : xs) {
        // crossing of y = 0: f = e^{e^b} > 1, open arc from (1,0,0) to the north pole
        const LogPolar up = log_polar(f, {b, 0.0});
        if (std::abs(std::remainder(up.argument, 2.0 * kPi)) > 1e-9 || !(up.log_modulus > 0.0) ||
            !std::isfinite(up.log_modulus)) {
            throw CertificateFailedError("expexp_certificate: crossing of y = 0 off its arc");
        }
        // crossing of y = -pi: f = e^{-e^c} in (0, 1), open arc towards the south pole
        const LogPolar down = log_polar(f, {b, -kPi});
        if (std::abs(std::remainder(down.argument, 2.0 * kPi)) > 1e-9 || !(down.log_modulus < 0.0) ||
            !std::isfinite(down.log_modulus)) {
            throw CertificateFailedError("expexp_certificate: crossing of y = -pi off its arc");
        }
        upper.push_back(stereo_inv(up));
        lower.push_back(stereo_inv(down));
        out.samples_checked += 2;
    }
    // P' -> P1' -> P2' -> P' runs once around the meridian circle Y = 0
    for (std::size_t i = 0; i < upper.size(); i += 20) {
        for (std::size_t j = 0; j < lower.size(); j += 20) {
            const double loop = sphere_distance(west, upper[i]) + sphere_distance(upper[i], lower[j]) +
                                sphere_distance(lower[j], west);
            if (std::abs(loop - 2.0 * kPi) > 1e-12) {
                throw CertificateFailedError("expexp_certificate: meridian loop is not 2 pi");
            }
            ++out.samples_checked;
        }
    }
    out.bound = 2.0 * kPi;
    return out;
}

double escape_diameter_upper(const RadialProfile& p, const QuadratureConfig& cfg) {
    QuadratureConfig qc = cfg;
    qc.rel_tol = std::min(cfg.rel_tol, 1e-12);
    qc.abs_tol = 1e-300;
    const double r_max = decay_radius(p);
    const double r0 = critical_radius(p, r_max);
    const double R_inf = ray_tail_length(p, 0.0, qc).value;
    double min_l = kInf;
    for (double r : geomspace(r0, r_max, 400)) min_l = std::min(min_l, circle_length(p, r));
    const double best = R_inf + 0.25 * min_l;
    if (!(circle_length(p, r_max) < kVanishingLength)) {
        throw InconclusiveError("escape_diameter_upper: circle lengths do not vanish by the decay radius",
                                best);
    }
    return best;
}

}  // namespace liouville
