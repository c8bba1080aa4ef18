// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace sausage {

/// A position in R^4, in units of the unit sausage radius.
struct Point4 {
  std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};

  constexpr Point4() = default;
  constexpr Point4(double x0, double x1, double x2, double x3) : x{x0, x1, x2, x3} {}

  constexpr double& operator[](std::size_t i) { return x[i]; }
  constexpr double operator[](std::size_t i) const { return x[i]; }

  constexpr Point4& operator+=(const Point4& o) {
    for (std::size_t i = 0; i < 4; ++i) x[i] += o.x[i];
    return *this;
  }
  constexpr Point4& operator-=(const Point4& o) {
    for (std::size_t i = 0; i < 4; ++i) x[i] -= o.x[i];
    return *this;
  }
  constexpr Point4& operator*=(double s) {
    for (auto& c : x) c *= s;
    return *this;
  }

  friend constexpr Point4 operator+(Point4 a, const Point4& b) { return a += b; }
  friend constexpr Point4 operator-(Point4 a, const Point4& b) { return a -= b; }
  friend constexpr Point4 operator*(Point4 a, double s) { return a *= s; }
  friend constexpr Point4 operator*(double s, Point4 a) { return a *= s; }
  friend constexpr bool operator==(const Point4&, const Point4&) = default;

  static constexpr Point4 axis(std::size_t i, double length = 1.0) {
    Point4 p;
    p.x[i] = length;
    return p;
  }
};

constexpr double dot(const Point4& a, const Point4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

constexpr double norm2(const Point4& p) { return dot(p, p); }

inline double norm(const Point4& p) { return std::sqrt(norm2(p)); }

constexpr double dist2(const Point4& a, const Point4& b) {
  const double d0 = a[0] - b[0];
  const double d1 = a[1] - b[1];
  const double d2 = a[2] - b[2];
  const double d3 = a[3] - b[3];
  return d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3;
}

inline double dist(const Point4& a, const Point4& b) { return std::sqrt(dist2(a, b)); }

inline std::ostream& operator<<(std::ostream& os, const Point4& p) {
  return os << '(' << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3] << ')';
}

}  // namespace sausage
