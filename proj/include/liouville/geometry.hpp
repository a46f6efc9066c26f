#pragma once

#include <cmath>
#include <complex>

namespace liouville {

using Complex = std::complex<double>;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Complex as_complex() const { return {x, y}; }
    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct Box {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool contains(Point2 p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
};

}  // namespace liouville
