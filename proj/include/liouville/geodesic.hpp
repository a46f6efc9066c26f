#pragma once

// Two-sided estimates of conformal distances: certified lower bounds from
// the sphere image of f, numerical upper bounds from explicit paths.

#include <cstddef>
#include <string>
#include <vector>

#include "liouville/metric.hpp"
#include "liouville/profile.hpp"
#include "liouville/quad.hpp"

namespace liouville {

enum class LowerKind { sphere_pullback, topological_certificate, trivial };
std::string to_string(LowerKind k);

struct DistanceEstimate {
    double lower = 0.0;
    double upper = 0.0;
    Polyline witness;
    LowerKind lower_kind = LowerKind::trivial;
};

struct GridSpec {
    Box box;
    int nx = 2;
    int ny = 2;
    int stencil = 16;  // 8 or 16 (knight moves)

    void validate() const;
};

/// d_{S^2}(Pi^{-1} f(P), Pi^{-1} f(Q)); never exceeds d_g(P, Q).
double sphere_lower_bound(const ConformalMetric& m, Point2 p, Point2 q);

struct GridPath {
    double length = 0.0;  // quadrature length of the witness polyline
    double error = 0.0;
    Polyline witness;
    std::size_t nodes_settled = 0;
};

/// Shortest path on the grid graph. Edge weights are conformal lengths of
/// the straight segments; P and Q join the graph through edges to every grid
/// node within two cells. Throws DomainError when P or Q lies outside the box.
GridPath grid_distance_upper(const ConformalMetric& m, Point2 p, Point2 q, const GridSpec& grid,
                             const QuadratureConfig& cfg);

/// Moves interior vertices by compass search, one at a time, accepting only
/// moves that shorten the two adjacent segments. Stops when a sweep gains
/// less than 1e-8 relative. The result is never longer than the input.
Polyline refine_path(const ConformalMetric& m, const Polyline& path, const QuadratureConfig& cfg);

/// Sphere lower bound, grid upper bound and path refinement combined.
DistanceEstimate distance_estimate(const ConformalMetric& m, Point2 p, Point2 q,
                                   const GridSpec& grid, const QuadratureConfig& cfg);

struct StripBound {
    double value = 0.0;  // sup over y of the horizontal mass
    double y_star = 0.0;
    std::vector<double> y_samples;
    std::vector<double> mass_samples;
};

/// Diameter upper bound for metrics 2 pi periodic in y whose vertical
/// connectors vanish at x = +-inf: the sup over y of the horizontal mass.
/// Throws BoundNotApplicableError when the connectors do not vanish.
StripBound strip_diameter_upper(const ConformalMetric& m, const QuadratureConfig& cfg);

struct UtCertificate {
    double t = 0.0;
    double a = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double y_star = 0.0;
    std::size_t samples_checked = 0;
};

/// Diameter of the u_t metric: a from e^a - t = tan(pi/4 - atan(t)/2),
/// lower = pi + 2 atan t after checking the sphere-angle argument on samples,
/// upper from strip_diameter_upper. Throws CertificateFailedError.
UtCertificate ut_certificate(double t, const QuadratureConfig& cfg = {});

struct ExpExpCertificate {
    double bound = 0.0;
    Point2 p, q;
    std::size_t samples_checked = 0;
};

/// Lower bound 2 pi for d_g(P, Q), P = (ln pi, pi/2), Q = (ln pi, -3pi/2),
/// under f = e^{e^z}. Throws CertificateFailedError if a sample check fails.
ExpExpCertificate expexp_certificate();

/// For a finite-volume radial supersolution: min over sampled r >= r0 of
/// R_inf + l(r)/4. Throws InconclusiveError when l has not dropped below
/// 1e-6 by the decay radius.
double escape_diameter_upper(const RadialProfile& p, const QuadratureConfig& cfg);

}  // namespace liouville
