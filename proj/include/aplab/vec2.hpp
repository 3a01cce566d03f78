#pragma once

#include <algorithm>
#include <cmath>
#include <compare>

namespace aplab {

struct Vec2 {
  double x = 0;
  double y = 0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  auto operator<=>(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// 2x2 matrix [[a, b], [c, d]] acting on column vectors.
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  double det() const { return a * d - b * c; }
  Mat2 inverse() const {
    const double k = 1.0 / det();
    return {d * k, -b * k, -c * k, a * k};
  }
  /// Largest singular value.
  double operator_norm() const {
    const double f = a * a + b * b + c * c + d * d;
    const double dt = det();
    const double disc = std::sqrt(std::max(0.0, f * f - 4 * dt * dt));
    return std::sqrt((f + disc) / 2);
  }
  bool operator==(const Mat2&) const = default;
};

}  // namespace aplab
