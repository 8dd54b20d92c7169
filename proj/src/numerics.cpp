#include "bourgen/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bourgen/errors.hpp"

namespace bourgen {

namespace {

// Integral over [a, b] of the quadratic through (x0,y0), (x1,y1), (x2,y2).
// Two-point Gauss-Legendre is exact for quadratics.
double quadratic_integral(double x0, double x1, double x2, double y0, double y1, double y2,
                          double a, double b) {
  const auto p = [&](double t) {
    const double l0 = (t - x1) * (t - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (t - x0) * (t - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (t - x0) * (t - x1) / ((x2 - x0) * (x2 - x1));
    return y0 * l0 + y1 * l1 + y2 * l2;
  };
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double g = half / std::sqrt(3.0);
  return half * (p(mid - g) + p(mid + g));
}

}  // namespace

std::vector<double> cumulative_simpson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw GridMismatchError("cumulative_simpson: x and y sizes differ");
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n == 2) {
    out[1] = 0.5 * (x[1] - x[0]) * (y[0] + y[1]);
    return out;
  }
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    out[i + 1] = out[i] + quadratic_integral(x[i], x[i + 1], x[i + 2], y[i], y[i + 1], y[i + 2],
                                             x[i], x[i + 1]);
    out[i + 2] = out[i] + quadratic_integral(x[i], x[i + 1], x[i + 2], y[i], y[i + 1], y[i + 2],
                                             x[i], x[i + 2]);
  }
  if (i + 1 < n) {
    // odd number of intervals: close the last one with the trailing triple
    out[i + 1] = out[i] + quadratic_integral(x[i - 1], x[i], x[i + 1], y[i - 1], y[i], y[i + 1],
                                             x[i], x[i + 1]);
  }
  return out;
}

std::vector<double> derivative_weights(double z, std::span<const double> nodes) {
  // Fornberg's recursion restricted to derivative orders 0 and 1.
  const std::size_t n = nodes.size();
  std::vector<std::array<double, 2>> c(n, {0.0, 0.0});
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

std::vector<double> finite_difference_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2) throw GridMismatchError("finite_difference_slopes: need at least 2 samples");
  const std::size_t width = std::min<std::size_t>(5, n);
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t lo = k >= width / 2 ? k - width / 2 : 0;
    lo = std::min(lo, n - width);
    const auto w = derivative_weights(x[k], x.subspan(lo, width));
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc += w[j] * y[lo + j];
    d[k] = acc;
  }
  return d;
}

void limit_monotone(std::span<const double> x, std::span<const double> y, std::span<double> d) {
  const std::size_t n = x.size();
  if (n < 2) return;
  std::vector<double> secant(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) secant[k] = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);

  for (std::size_t k = 1; k + 1 < n; ++k)
    if (secant[k - 1] * secant[k] <= 0.0) d[k] = 0.0;
  if (d[0] * secant[0] < 0.0) d[0] = 0.0;
  if (d[n - 1] * secant[n - 2] < 0.0) d[n - 1] = 0.0;

  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (secant[k] == 0.0) {
      d[k] = d[k + 1] = 0.0;
      continue;
    }
    double alpha = d[k] / secant[k];
    double beta = d[k + 1] / secant[k];
    if (alpha < 0.0) d[k] = alpha = 0.0;
    if (beta < 0.0) d[k + 1] = beta = 0.0;
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d[k] = tau * alpha * secant[k];
      d[k + 1] = tau * beta * secant[k];
    }
  }
}

HermiteSpline::HermiteSpline(std::vector<double> x, std::vector<double> y, std::vector<double> slopes)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(slopes)) {
  if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != d_.size())
    throw GridMismatchError("HermiteSpline: need matching node, value and slope arrays (n >= 2)");
  for (std::size_t k = 1; k < x_.size(); ++k)
    if (!(x_[k] > x_[k - 1])) throw GridMismatchError("HermiteSpline: nodes must be strictly increasing");
}

HermiteSpline HermiteSpline::from_samples(std::vector<double> x, std::vector<double> y, bool monotone) {
  auto d = finite_difference_slopes(x, y);
  if (monotone) limit_monotone(x, y, d);
  return HermiteSpline(std::move(x), std::move(y), std::move(d));
}

std::size_t HermiteSpline::interval(double t) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(k, x_.size() - 2);
}

double HermiteSpline::operator()(double t) const {
  const std::size_t k = interval(t);
  const double h = x_[k + 1] - x_[k];
  const double u = (t - x_[k]) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y_[k] + (u3 - 2 * u2 + u) * h * d_[k] +
         (-2 * u3 + 3 * u2) * y_[k + 1] + (u3 - u2) * h * d_[k + 1];
}

double HermiteSpline::derivative(double t) const {
  const std::size_t k = interval(t);
  const double h = x_[k + 1] - x_[k];
  const double u = (t - x_[k]) / h;
  const double u2 = u * u;
  return ((6 * u2 - 6 * u) * y_[k] + (-6 * u2 + 6 * u) * y_[k + 1]) / h +
         (3 * u2 - 4 * u + 1) * d_[k] + (3 * u2 - 2 * u) * d_[k + 1];
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t k = 0; k < n; ++k)
    out[k] = k + 1 == n ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  return out;
}

}  // namespace bourgen
