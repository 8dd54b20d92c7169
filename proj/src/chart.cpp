#include "bourgen/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bourgen/errors.hpp"

namespace bourgen {

namespace {

std::string point_text(const Point2& p) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "(%.10g, %.10g)", p[0], p[1]);
  return buf;
}

void require_domain(const AdaptedChart3& chart, const Point2& p, const char* who) {
  if (!chart.contains(p))
    throw DomainError(std::string(who) + ": point " + point_text(p) + " outside domain of chart '" +
                      chart.label + "'");
}

}  // namespace

Mat3 metric_at(const AdaptedChart3& chart, const Point2& p) {
  require_domain(chart, p, "metric_at");
  const double x1 = p[0], x2 = p[1];
  const double a11 = chart.g11(x1, x2), a12 = chart.g12(x1, x2), a13 = chart.g13(x1, x2);
  const double a22 = chart.g22(x1, x2), a23 = chart.g23(x1, x2), a33 = chart.g33(x1, x2);
  return {{{a11, a12, a13}, {a12, a22, a23}, {a13, a23, a33}}};
}

Mat3 inverse_metric_at(const AdaptedChart3& chart, const Point2& p) {
  const Mat3 g = metric_at(chart, p);
  const double d = det(g);
  if (!(d > 0.0) || !(g[0][0] > 0.0) || !(g[0][0] * g[1][1] - g[0][1] * g[0][1] > 0.0))
    throw SingularMetricError("inverse_metric_at: metric not positive definite at " + point_text(p));
  Mat3 inv;
  inv[0][0] = (g[1][1] * g[2][2] - g[1][2] * g[2][1]) / d;
  inv[0][1] = (g[0][2] * g[2][1] - g[0][1] * g[2][2]) / d;
  inv[0][2] = (g[0][1] * g[1][2] - g[0][2] * g[1][1]) / d;
  inv[1][1] = (g[0][0] * g[2][2] - g[0][2] * g[2][0]) / d;
  inv[1][2] = (g[0][2] * g[1][0] - g[0][0] * g[1][2]) / d;
  inv[2][2] = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) / d;
  inv[1][0] = inv[0][1];
  inv[2][0] = inv[0][2];
  inv[2][1] = inv[1][2];
  return inv;
}

double volume_at(const AdaptedChart3& chart, const Point2& p) {
  require_domain(chart, p, "volume_at");
  const double g33 = chart.g33(p[0], p[1]);
  if (!(g33 > 0.0)) throw SingularMetricError("volume_at: g33 <= 0 at " + point_text(p));
  return std::sqrt(g33);
}

InvariantFunction volume_function(const AdaptedChart3& chart) {
  InvariantFunction omega;
  omega.value = [chart](double x1, double x2) { return volume_at(chart, {x1, x2}); };
  omega.gradient = chart.volume_gradient;
  return omega;
}

Point2 coordinate_gradient(const AdaptedChart3& chart, const InvariantFunction& f, const Point2& p,
                           double rel_step) {
  if (f.gradient) return f.gradient(p[0], p[1]);
  Point2 grad{};
  for (int i = 0; i < 2; ++i) {
    const double h = rel_step * std::max(1.0, std::abs(p[i]));
    Point2 plus = p, minus = p;
    plus[i] += h;
    minus[i] -= h;
    if (!chart.contains(plus) || !chart.contains(minus))
      throw DomainError("finite-difference stencil at " + point_text(p) + " leaves the domain");
    grad[i] = (f(plus) - f(minus)) / (plus[i] - minus[i]);
  }
  return grad;
}

Mat2 inverse_metric_block(const AdaptedChart3& chart, const Point2& p) {
  const Mat3 inv = inverse_metric_at(chart, p);
  return {{{inv[0][0], inv[0][1]}, {inv[1][0], inv[1][1]}}};
}

double invariant_pairing(const AdaptedChart3& chart, const InvariantFunction& f, const InvariantFunction& h,
                         const Point2& p, double rel_step) {
  const Mat2 block = inverse_metric_block(chart, p);
  const Point2 df = coordinate_gradient(chart, f, p, rel_step);
  const Point2 dh = &f == &h ? df : coordinate_gradient(chart, h, p, rel_step);
  return quadratic(block, df, dh);
}

ChartValidation validate(const AdaptedChart3& chart, std::span<const Point2> sample_grid) {
  ChartValidation out;
  for (const Point2& p : sample_grid) {
    if (!chart.contains(p)) {
      ++out.outside_domain;
      continue;
    }
    ++out.checked;
    const Mat3 g = metric_at(chart, p);
    const double m1 = g[0][0];
    const double m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    const double m3 = det(g);
    if (!(m1 > 0.0 && m2 > 0.0 && m3 > 0.0 && g[2][2] > 0.0)) out.failures.push_back(p);
  }
  return out;
}

}  // namespace bourgen
