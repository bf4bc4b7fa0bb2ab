#pragma once

#include <cmath>

namespace lqw {

// Plain 2D point/vector. Value type, no surprises.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double px, double py) : x(px), y(py) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double t) const { return {x * t, y * t}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(x * x + y * y); }

  // Exact for axis-aligned differences (hypot(d, 0) == |d|), which keeps
  // straight-line chord/arc ratios at exactly 1.
  double norm_careful() const { return std::hypot(x, y); }

  Vec2 normalized() const {
    double n = norm();
    return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
  }
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double t, const Vec2& v) { return v * t; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

}  // namespace lqw
