#pragma once

// Closed-form reference values, written independently of the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <complex>
#include <numbers>
#include <random>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// bubble u = ln(2 lambda / (1 + lambda^2 r^2)), optionally minus c
inline double bubble_u(double lambda, double r, double c = 0.0) {
    return std::log(2.0 * lambda / (1.0 + lambda * lambda * r * r)) - c;
}
inline double bubble_length(double lambda, double r, double c = 0.0) {
    return 4.0 * pi * lambda * r / (1.0 + lambda * lambda * r * r) * std::exp(-c);
}
inline double bubble_area(double lambda, double r, double c = 0.0) {
    const double s = lambda * lambda * r * r;
    return 4.0 * pi * s / (1.0 + s) * std::exp(-2.0 * c);
}
inline double bubble_ray(double lambda, double r, double c = 0.0) {
    return 2.0 * std::atan(lambda * r) * std::exp(-c);
}

// u = -r^2
inline double gauss_length(double r) { return 2.0 * pi * r * std::exp(-r * r); }
inline double gauss_area(double r) { return 0.5 * pi * (1.0 - std::exp(-2.0 * r * r)); }
inline double gauss_ray(double r) { return 0.5 * std::sqrt(pi) * std::erf(r); }

struct P3 {
    double x, y, z;
};

inline P3 stereo_inv(std::complex<double> w) {
    const double n = std::norm(w);
    return {2.0 * w.real() / (1.0 + n), 2.0 * w.imag() / (1.0 + n), (n - 1.0) / (n + 1.0)};
}

inline double sphere_angle(P3 a, P3 b) {
    const double d = a.x * b.x + a.y * b.y + a.z * b.z;
    return std::acos(std::clamp(d, -1.0, 1.0));
}

// u_t(x, y) = ln(2 e^x / (1 + |t + e^{x+iy}|^2))
inline double ut_u(double t, double x, double y) {
    const std::complex<double> f = t + std::exp(std::complex<double>(x, y));
    return std::log(2.0 * std::exp(x) / (1.0 + std::norm(f)));
}

inline double ut_diameter(double t) { return pi + 2.0 * std::atan(t); }
inline double ut_a(double t) { return std::log(t + std::tan(pi / 4.0 - 0.5 * std::atan(t))); }

inline double sphere_volume(int n) {
    return 2.0 * std::pow(pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

inline std::mt19937_64 rng(std::uint64_t seed = 0x5eed) { return std::mt19937_64(seed); }

}  // namespace oracle
