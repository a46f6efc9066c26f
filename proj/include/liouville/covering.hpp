#pragma once

// Radial sphere covering inequalities, the radial isoperimetric inequality
// for symmetric domains, level-set functionals and the subsolution volume
// bound.

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "liouville/devfn.hpp"
#include "liouville/profile.hpp"
#include "liouville/quad.hpp"

namespace liouville {

struct RadialPair {
    RadialProfile u1;
    RadialProfile u2;
    double r = 1.0;
};

/// primal: u2 > u1 and L(u2) >= L(u1); dual: u2 < u1 and L(u2) <= L(u1),
/// where L(u) = u'' + u'/rho + e^{2u}.
enum class Orientation { primal, dual };

struct HypothesesCheck {
    bool ordered = false;         // strict order of u1, u2 on [0, r)
    bool boundary_match = false;  // |u2(r) - u1(r)| <= 1e-9
    bool differential = false;    // ordered L difference >= -1e-10 on the grid
    double min_gap = 0.0;         // smallest signed gap over [0, r)
    double at_gap = 0.0;
    double boundary_gap = 0.0;
    double min_differential = 0.0;
    double at_differential = 0.0;
    bool all_pass() const { return ordered && boundary_match && differential; }
};

/// 1001 evenly spaced points on [0, r].
std::vector<double> pair_grid(const RadialPair& pair);

HypothesesCheck hypotheses_check(const RadialPair& pair, const std::vector<double>& grid,
                                 Orientation orientation = Orientation::primal);

struct CoveringSum {
    double area1 = 0.0;  // conformal area of B_r under u1
    double area2 = 0.0;
    double lhs = 0.0;    // area1 + area2
    double rhs = 0.0;    // total area of u1
    double margin = 0.0; // lhs - rhs
};

/// Throws PreconditionError when the hypotheses fail on pair_grid or u1 is
/// not a supersolution.
CoveringSum covering_sum(const RadialPair& pair, const QuadratureConfig& cfg);
CoveringSum dual_covering_sum(const RadialPair& pair, const QuadratureConfig& cfg);

struct StrictPair {
    RadialPair pair;
    double amplitude = 0.0;
    int attempts = 0;
};

/// u2 = u1 + A (1 - rho^2/r^2)^2 on B_r, scanning A = sign * step * k for
/// k = 1..max_steps until the hypotheses pass. The sign is +1 for primal
/// pairs and -1 for dual ones. Throws ResolutionError if none passes.
StrictPair construct_strict_pair(const RadialProfile& u1, double r, Orientation orientation,
                                 double step = 0.25, int max_steps = 40);

/// inner < outer; inner = 0 is a disk, outer = inf the exterior of a disk.
struct Annulus {
    double inner = 0.0;
    double outer = 1.0;
};

struct IsoperimetricResult {
    double perimeter = 0.0;
    double area = 0.0;
    double total_area = 0.0;
    double lhs = 0.0;     // P^2
    double rhs = 0.0;     // A (A_inf - A)
    double margin = 0.0;  // (lhs - rhs) / max(|lhs|, |rhs|), 0 for the empty domain
    bool pass = false;
};

/// Annuli must be sorted and disjoint (touching ones are merged); otherwise
/// InvalidDomainError. Throws PreconditionError if u1 is not a supersolution.
IsoperimetricResult radial_isoperimetric(const RadialProfile& u1, const std::vector<Annulus>& omega,
                                         const QuadratureConfig& cfg);

struct LevelSetProfile {
    std::vector<double> t;
    std::vector<double> alpha;  // int_{u > t} lambda e^{2u} dmu
    std::vector<double> beta;   // mu({u > t})
    double lambda_param = 1.0;
    // largest |d alpha - lambda e^{2t} d beta| between adjacent t, relative
    // to the larger of the two sides
    double relation_residual = 0.0;
    bool monotone = false;
};

/// u = u2 - u1 on B_r, mu = e^{2 u1} dx, h(u) = lambda e^{2u}.
/// Throws PreconditionError if u <= 0 somewhere in B_r and ResolutionError
/// when u - t has more than 64 roots.
LevelSetProfile level_set_profile(const RadialPair& pair, double lambda_param,
                                  const std::vector<double>& t_grid, const QuadratureConfig& cfg);

struct SubsolutionVolume {
    bool subsolution = false;  // pointwise Delta u + e^{2u} >= 0 on the sample grid
    double min_defect = 0.0;
    bool divergent = false;
    double volume = std::numeric_limits<double>::infinity();
    double margin = std::numeric_limits<double>::infinity();  // volume - 4 pi
    bool pass() const { return subsolution && margin >= -1e-8; }
};

SubsolutionVolume subsolution_volume_check(const RadialProfile& p, const QuadratureConfig& cfg);
/// Pointwise check by finite differences on [-4, 4]^2 (h = 1e-3, tolerance
/// 1e-4), volume by total_area with rel_tol at least 1e-6.
SubsolutionVolume subsolution_volume_check(const SolutionField& s, const QuadratureConfig& cfg);

}  // namespace liouville
