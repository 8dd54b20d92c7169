#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include <json.hpp>

#include "bourgen/chart.hpp"
#include "bourgen/numerics.hpp"

namespace bourgen {

// Metric of the orbit space in the coordinates (x1, x2).
struct QuotientMetric2 {
  ScalarField q11, q12, q22;

  Mat2 at(const Point2& p) const {
    const double c = q12(p[0], p[1]);
    return {{{q11(p[0], p[1]), c}, {c, q22(p[0], p[1])}}};
  }
};

// Inverse of the upper 2x2 block of the inverse ambient metric.
QuotientMetric2 quotient_metric(const AdaptedChart3& chart);

// Declared validity rectangle in (omega, theta).
struct OmegaThetaRect {
  double omega_min = 0.0;
  double omega_max = std::numeric_limits<double>::infinity();
  double theta_min = -std::numeric_limits<double>::infinity();
  double theta_max = std::numeric_limits<double>::infinity();

  bool contains(double omega, double theta) const {
    return std::isfinite(omega) && std::isfinite(theta) && omega >= omega_min && omega <= omega_max &&
           theta >= theta_min && theta <= theta_max;
  }
  bool bounded() const;
};

// Orthogonal invariant coordinates (omega, theta) on the orbit space, with
// g(grad omega, grad theta) = 0, so the quotient metric reads
//   d omega^2 / |grad omega|^2 + d theta^2 / |grad theta|^2.
struct QuotientFrame {
  AdaptedChart3 chart;
  InvariantFunction omega;
  InvariantFunction theta;
  std::function<double(double, double)> grad_omega_sq;  // of (omega, theta)
  std::function<double(double, double)> grad_theta_sq;  // of (omega, theta)
  std::function<Point2(double, double)> invert;         // (omega, theta) -> (x1, x2)
  OmegaThetaRect rect;

  // Rows are the coordinate gradients of omega and theta at x.
  Mat2 jacobian(const Point2& x) const;
};

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
};

// Damped Newton solve of (omega(x), theta(x)) = target from `seed`. The
// residual max-norm after every iterate is appended to `history` if given.
Point2 newton_invert(const AdaptedChart3& chart, const InvariantFunction& omega, const InvariantFunction& theta,
                     const Point2& seed, const Point2& target, const NewtonOptions& options = {},
                     std::vector<double>* history = nullptr);

struct SeedBox {
  double x1_min, x1_max, x2_min, x2_max;
};

struct FrameOptions {
  NewtonOptions newton;
  int seed_count = 41;               // per axis
  double min_jacobian_sine = 1e-8;   // |det J| / (|grad omega| |grad theta|)
};

// Frame with Newton inversion seeded from a grid over `seed_box`. Throws
// RankDeficiencyError when the Jacobian check fails on the seed grid.
QuotientFrame build_frame(const AdaptedChart3& chart, const InvariantFunction& theta, const OmegaThetaRect& rect,
                          const SeedBox& seed_box, const FrameOptions& options = {});

// Frame from a known inverse map; gradient norms still come from pairings.
QuotientFrame analytic_frame(const AdaptedChart3& chart, const InvariantFunction& theta,
                             std::function<Point2(double, double)> invert, const OmegaThetaRect& rect);

// Debug dump: n x n grid of (omega, theta, x1, x2) over a bounded rect.
nlohmann::json frame_grid_dump(const QuotientFrame& frame, int n);

// ---- orthogonal invariant by characteristics -------------------------------

struct CharacteristicOptions {
  double step = 0.0;           // omega step of the traced grid; 0 selects cauchy arc length / 400
  double omega_min = 0.0;      // tracing extent in omega
  double omega_max = 0.0;
  int shooting_steps = 200;    // fixed RK4 steps per refinement shot
  double tolerance = 1e-13;    // relative, on the Cauchy parameter
  int max_iterations = 40;
  double min_angle = 1e-3;     // radians between Cauchy tangent and characteristic
};

// One characteristic: x(omega) through the Cauchy point with parameter sigma.
struct Characteristic {
  double sigma = 0.0;
  HermiteSpline x1, x2;  // functions of omega
  double omega_lo() const { return x1.front(); }
  double omega_hi() const { return x1.back(); }
};

// theta is constant along the integral curves of the coordinate vector field
// a = [g^ij] d omega (the gradient lines of omega), equal to the Cauchy
// parameter on the Cauchy curve. Evaluation seeds the parameter from the
// traced grid and refines it by shooting from the Cauchy curve.
class TracedInvariant {
 public:
  TracedInvariant(AdaptedChart3 chart, std::function<Point2(double)> cauchy, std::vector<Characteristic> grid,
                  CharacteristicOptions options);

  double operator()(const Point2& p) const;
  // Grid-only estimate (no shooting refinement).
  double seed(const Point2& p) const;

  const std::vector<Characteristic>& grid() const noexcept { return grid_; }

 private:
  Point2 shoot(double sigma, double omega_target) const;

  AdaptedChart3 chart_;
  InvariantFunction omega_;
  std::function<Point2(double)> cauchy_;
  std::vector<Characteristic> grid_;
  CharacteristicOptions options_;
};

// d x / d omega along the characteristic; throws DegenerateGradientError.
Point2 characteristic_direction(const AdaptedChart3& chart, const InvariantFunction& omega, const Point2& x);

// Traces every characteristic through cauchy(sigma), sigma in arc_grid.
// The OpenMP kernel and its serial reference produce identical grids.
std::vector<Characteristic> trace_characteristics(const AdaptedChart3& chart,
                                                  const std::function<Point2(double)>& cauchy,
                                                  std::span<const double> arc_grid,
                                                  const CharacteristicOptions& options);
std::vector<Characteristic> trace_characteristics_serial(const AdaptedChart3& chart,
                                                         const std::function<Point2(double)>& cauchy,
                                                         std::span<const double> arc_grid,
                                                         const CharacteristicOptions& options);

// `cauchy` must be parametrized by arc length; theta equals that parameter on it.
InvariantFunction solve_orthogonal_invariant(const AdaptedChart3& chart, std::function<Point2(double)> cauchy,
                                             std::span<const double> arc_grid, CharacteristicOptions options);

}  // namespace bourgen
