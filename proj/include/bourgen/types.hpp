#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace bourgen {

using Point2 = std::array<double, 2>;
using Point3 = std::array<double, 3>;
using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// Scalar function of the orbit-space coordinates (x1, x2).
using ScalarField = std::function<double(double, double)>;
// Coordinate gradient (d/dx1, d/dx2) of a scalar field.
using GradientField = std::function<Point2(double, double)>;

inline double det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

inline Mat2 inverse(const Mat2& m) {
  const double d = det(m);
  return {{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
}

inline double det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Bilinear form v^T A w for the upper 2x2 block.
inline double quadratic(const Mat2& a, const Point2& v, const Point2& w) {
  return v[0] * (a[0][0] * w[0] + a[0][1] * w[1]) + v[1] * (a[1][0] * w[0] + a[1][1] * w[1]);
}

inline double norm(const Point2& v) { return std::hypot(v[0], v[1]); }

}  // namespace bourgen
