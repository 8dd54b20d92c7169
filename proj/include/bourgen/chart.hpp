#pragma once

#include <span>
#include <string>
#include <vector>

#include "bourgen/types.hpp"

namespace bourgen {

// A function on the orbit space, i.e. independent of x3. The gradient hook is
// optional; without it derivatives come from central differences.
struct InvariantFunction {
  ScalarField value;
  GradientField gradient;

  double operator()(double x1, double x2) const { return value(x1, x2); }
  double operator()(const Point2& p) const { return value(p[0], p[1]); }
};

// Riemannian 3-metric in coordinates adapted to a Killing field X = d/dx3.
// Coefficients take (x1, x2) only, so X(g_ij) = 0 holds by construction.
struct AdaptedChart3 {
  ScalarField g11, g12, g13, g22, g23, g33;
  std::function<bool(double, double)> domain;
  std::string label;
  // Optional analytic coordinate gradient of the volume function sqrt(g33).
  GradientField volume_gradient;

  bool contains(const Point2& p) const { return !domain || domain(p[0], p[1]); }
};

// Relative step used for all central differences: h * max(1, |x|).
inline constexpr double kDefaultFdStep = 1e-6;

Mat3 metric_at(const AdaptedChart3& chart, const Point2& p);
Mat3 inverse_metric_at(const AdaptedChart3& chart, const Point2& p);
double volume_at(const AdaptedChart3& chart, const Point2& p);

// The volume function omega = ||X|| as an invariant function.
InvariantFunction volume_function(const AdaptedChart3& chart);

// Coordinate gradient of f at p; analytic if f carries a gradient hook.
Point2 coordinate_gradient(const AdaptedChart3& chart, const InvariantFunction& f, const Point2& p,
                           double rel_step = kDefaultFdStep);

// Upper 2x2 block of the inverse metric, i.e. g(grad x_i, grad x_j).
Mat2 inverse_metric_block(const AdaptedChart3& chart, const Point2& p);

// g(grad f, grad h) for invariant f, h. Only the 2x2 block of the inverse
// metric enters because d3 f = d3 h = 0.
double invariant_pairing(const AdaptedChart3& chart, const InvariantFunction& f, const InvariantFunction& h,
                         const Point2& p, double rel_step = kDefaultFdStep);

struct ChartValidation {
  std::size_t checked = 0;
  std::size_t outside_domain = 0;
  std::vector<Point2> failures;  // points where [g_ij] is not symmetric positive definite
  bool ok() const noexcept { return failures.empty(); }
};

// Checks positive definiteness (leading principal minors) at the given points.
ChartValidation validate(const AdaptedChart3& chart, std::span<const Point2> sample_grid);

}  // namespace bourgen
