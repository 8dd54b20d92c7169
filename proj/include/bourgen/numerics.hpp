#pragma once

#include <span>
#include <vector>

namespace bourgen {

// Cumulative composite Simpson integral of samples y(x), starting at 0.
// Even-indexed nodes carry the classical composite Simpson sums; odd nodes
// integrate the same local quadratic over a single interval. Non-uniform
// grids use the quadratic through each node triple. Two samples fall back to
// the trapezoid rule.
std::vector<double> cumulative_simpson(std::span<const double> x, std::span<const double> y);

// Finite-difference weights (Fornberg) for the first derivative at z.
std::vector<double> derivative_weights(double z, std::span<const double> nodes);

// Node slopes from a (up to) 5-point Lagrange stencil, shifted at the ends.
std::vector<double> finite_difference_slopes(std::span<const double> x, std::span<const double> y);

// Fritsch-Carlson limiting of node slopes so the Hermite interpolant is
// monotone on every interval where the data are.
void limit_monotone(std::span<const double> x, std::span<const double> y, std::span<double> slopes);

// Piecewise cubic Hermite interpolant over strictly increasing nodes.
// Outside [front, back] the end cubic is extrapolated.
class HermiteSpline {
 public:
  HermiteSpline() = default;
  HermiteSpline(std::vector<double> x, std::vector<double> y, std::vector<double> slopes);

  // Slopes estimated from the data; `monotone` applies Fritsch-Carlson limiting.
  static HermiteSpline from_samples(std::vector<double> x, std::vector<double> y, bool monotone);

  double operator()(double t) const;
  double derivative(double t) const;

  bool empty() const noexcept { return x_.empty(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  const std::vector<double>& nodes() const noexcept { return x_; }
  const std::vector<double>& values() const noexcept { return y_; }
  const std::vector<double>& slopes() const noexcept { return d_; }

 private:
  std::size_t interval(double t) const;

  std::vector<double> x_, y_, d_;
};

// n points evenly spaced on [a, b] with both ends included (n >= 2).
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace bourgen
