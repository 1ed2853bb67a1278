#pragma once

#include <cmath>

namespace herd {

// 2D vector in world units. Plain value type used for positions and forces.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& r) { x += r.x; y += r.y; return *this; }
    Vec2& operator-=(const Vec2& r) { x -= r.x; y -= r.y; return *this; }
    constexpr bool operator==(const Vec2& r) const { return x == r.x && y == r.y; }

    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }

    // Zero-safe normalization: the zero vector stays zero.
    Vec2 normalized() const {
        const double n = norm();
        if (n <= 0.0) return {0.0, 0.0};
        return {x / n, y / n};
    }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

}  // namespace herd
