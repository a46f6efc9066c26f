#pragma once

// Developing functions f (meromorphic, simple poles, f' != 0) and the
// Liouville solutions u = ln(2|f'| / (1 + |f|^2)) they induce.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "liouville/geometry.hpp"

namespace liouville {

/// Outer similarity acting on the argument: f_sim(z) = f(scale * e^{i rotate} * (z - translate)).
/// The induced solution is u(scale * R(z - c)) + ln(scale).
struct Similarity {
    Complex translate{0.0, 0.0};
    double rotate = 0.0;
    double scale = 1.0;

    Complex pull_back(Complex z) const { return scale * std::polar(1.0, rotate) * (z - translate); }
    Complex chain_factor() const { return scale * std::polar(1.0, rotate); }
    bool is_identity() const {
        return translate == Complex{0.0, 0.0} && rotate == 0.0 && scale == 1.0;
    }
};

/// f(z) = (a z + b) / (c z + d).
struct Mobius {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};
    Complex d{1.0, 0.0};
};

/// f(z) = t + e^z.
struct AffineExp {
    double t = 0.0;
};

/// f(z) = e^{e^z}.
struct ExpExp {};

/// f(z) = (p e^{cz} - conj(q)) / (q e^{cz} + p), |p|^2 + |q|^2 = 1.
struct OneDim {
    Complex p{1.0, 0.0};
    Complex q{0.0, 0.0};
    double c = 1.0;
};

class DevelopingFunction {
public:
    using Variant = std::variant<Mobius, AffineExp, ExpExp, OneDim>;

    DevelopingFunction(Variant v, Similarity s = {}) : variant_(v), similarity_(s) {}

    /// Standard bubble ln(2 lambda / (1 + lambda^2 |z|^2)), i.e. Mobius(lambda, 0, 0, 1).
    static DevelopingFunction bubble(double lambda) {
        return DevelopingFunction(Mobius{{lambda, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    }

    const Variant& variant() const { return variant_; }
    const Similarity& similarity() const { return similarity_; }
    std::string kind() const;

private:
    Variant variant_;
    Similarity similarity_;
};

/// f(z) on the Riemann sphere. `saturated` means the modulus overflowed the
/// double range; `value` then holds the unit direction e^{i arg f}.
struct ExtendedValue {
    enum class Kind { finite, infinity, saturated };
    Kind kind = Kind::finite;
    Complex value{0.0, 0.0};

    bool is_finite() const { return kind == Kind::finite; }
};

ExtendedValue eval(const DevelopingFunction& f, Complex z);

/// f'(z) with the similarity chain rule applied.
/// Throws PoleError at a pole, OverflowError when |f'| leaves the double range.
Complex deriv(const DevelopingFunction& f, Complex z);

/// (ln|f(z)|, arg f(z)) computed without forming f, so it stays finite
/// where e^{e^z} overflows. log_modulus is +inf exactly at poles.
struct LogPolar {
    double log_modulus = 0.0;
    double argument = 0.0;
};
LogPolar log_polar(const DevelopingFunction& f, Complex z);

/// Values closer to a pole than this (|f| above it) are evaluated through g = 1/f.
inline constexpr double kPoleSwitchModulus = 1.0e4;

class SolutionField {
public:
    explicit SolutionField(DevelopingFunction f) : f_(f) {}

    const DevelopingFunction& source() const { return f_; }
    double u(double x, double y) const;
    double factor(double x, double y) const;

private:
    DevelopingFunction f_;
};

double solution_u(const SolutionField& s, double x, double y);

/// Five-point Laplacian of u plus e^{2u}; O(h^2) for exact solutions.
double pde_residual(const SolutionField& s, double x, double y, double h);

struct ConvergenceStudy {
    std::vector<double> h;
    std::vector<double> rms;     // root mean square residual over the points at each h
    std::vector<double> orders;  // log2-type ratios between consecutive h
    double min_order = 0.0;
};

/// Observed order of the finite-difference residual over a point set.
ConvergenceStudy residual_convergence(const SolutionField& s, const std::vector<Point2>& points,
                                      const std::vector<double>& hs);

struct ValidationReport {
    double min_abs_deriv = 0.0;
    Point2 argmin{};
    bool near_vanishing_deriv = false;  // some sample had |f'| < 1e-12
    std::size_t samples_used = 0;
    std::size_t samples_skipped = 0;  // pole neighbourhoods and overflow
};

/// Checks the structural constraints (Mobius determinant, OneDim
/// normalisation) and samples |f'| on an n x n grid over `box`.
/// Throws InvalidFunctionError when f cannot be a developing function.
ValidationReport validate(const DevelopingFunction& f, const Box& box, std::size_t n);

}  // namespace liouville
