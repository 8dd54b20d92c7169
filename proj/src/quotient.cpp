#include "bourgen/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>

#include "bourgen/errors.hpp"

namespace bourgen {

QuotientMetric2 quotient_metric(const AdaptedChart3& chart) {
  // q = (1/(g^11 g^22 - (g^12)^2)) [[g^22, -g^12], [-g^12, g^11]]
  const auto entry = [chart](int which) {
    return [chart, which](double x1, double x2) {
      const Mat2 b = inverse_metric_block(chart, {x1, x2});
      const double d = det(b);
      if (!(d > 0.0)) throw SingularMetricError("quotient_metric: degenerate inverse block");
      switch (which) {
        case 0: return b[1][1] / d;
        case 1: return -b[0][1] / d;
        default: return b[0][0] / d;
      }
    };
  };
  return {entry(0), entry(1), entry(2)};
}

bool OmegaThetaRect::bounded() const {
  return std::isfinite(omega_min) && std::isfinite(omega_max) && std::isfinite(theta_min) &&
         std::isfinite(theta_max);
}

Mat2 QuotientFrame::jacobian(const Point2& x) const {
  const Point2 dw = coordinate_gradient(chart, omega, x);
  const Point2 dt = coordinate_gradient(chart, theta, x);
  return {{{dw[0], dw[1]}, {dt[0], dt[1]}}};
}

namespace {

std::optional<Point2> try_residual(const AdaptedChart3& chart, const InvariantFunction& omega,
                                   const InvariantFunction& theta, const Point2& x, const Point2& target) {
  if (!chart.contains(x)) return std::nullopt;
  try {
    return Point2{omega(x) - target[0], theta(x) - target[1]};
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

double max_abs(const Point2& r) { return std::max(std::abs(r[0]), std::abs(r[1])); }

}  // namespace

Point2 newton_invert(const AdaptedChart3& chart, const InvariantFunction& omega, const InvariantFunction& theta,
                     const Point2& seed, const Point2& target, const NewtonOptions& options,
                     std::vector<double>* history) {
  const double scale = std::max({1.0, std::abs(target[0]), std::abs(target[1])});
  Point2 x = seed;
  const auto r0 = try_residual(chart, omega, theta, x, target);
  if (!r0) throw NewtonDivergenceError("newton_invert: seed outside domain", INFINITY);
  Point2 r = *r0;
  double res = max_abs(r);
  if (history) history->push_back(res);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (res <= options.tolerance * scale) return x;
    const Point2 dw = coordinate_gradient(chart, omega, x);
    const Point2 dt = coordinate_gradient(chart, theta, x);
    const Mat2 jac{{{dw[0], dw[1]}, {dt[0], dt[1]}}};
    if (det(jac) == 0.0) throw NewtonDivergenceError("newton_invert: singular Jacobian", res);
    const Mat2 inv = inverse(jac);
    const Point2 dx{-(inv[0][0] * r[0] + inv[0][1] * r[1]), -(inv[1][0] * r[0] + inv[1][1] * r[1])};
    bool accepted = false;
    double lambda = 1.0;
    for (int halving = 0; halving < 40 && !accepted; ++halving, lambda *= 0.5) {
      const Point2 xn{x[0] + lambda * dx[0], x[1] + lambda * dx[1]};
      const auto rn = try_residual(chart, omega, theta, xn, target);
      if (rn && max_abs(*rn) < res) {
        x = xn;
        r = *rn;
        res = max_abs(r);
        accepted = true;
      }
    }
    if (history) history->push_back(res);
    if (!accepted) {
      if (res <= 1e3 * options.tolerance * scale) return x;  // stalled at rounding level
      throw NewtonDivergenceError("newton_invert: no descent step", res);
    }
  }
  if (res <= options.tolerance * scale) return x;
  char buf[96];
  std::snprintf(buf, sizeof buf, "newton_invert: no convergence in %d iterations (residual %.3g)",
                options.max_iterations, res);
  throw NewtonDivergenceError(buf, res);
}

namespace {

void attach_gradient_norms(QuotientFrame& frame) {
  const AdaptedChart3 chart = frame.chart;
  const InvariantFunction omega = frame.omega;
  const InvariantFunction theta = frame.theta;
  const auto invert = frame.invert;
  frame.grad_omega_sq = [chart, omega, invert](double w, double t) {
    return invariant_pairing(chart, omega, omega, invert(w, t));
  };
  frame.grad_theta_sq = [chart, theta, invert](double w, double t) {
    return invariant_pairing(chart, theta, theta, invert(w, t));
  };
}

struct Seed {
  Point2 x;
  double omega, theta;
};

}  // namespace

QuotientFrame analytic_frame(const AdaptedChart3& chart, const InvariantFunction& theta,
                             std::function<Point2(double, double)> invert, const OmegaThetaRect& rect) {
  QuotientFrame frame;
  frame.chart = chart;
  frame.omega = volume_function(chart);
  frame.theta = theta;
  frame.invert = std::move(invert);
  frame.rect = rect;
  attach_gradient_norms(frame);
  return frame;
}

QuotientFrame build_frame(const AdaptedChart3& chart, const InvariantFunction& theta, const OmegaThetaRect& rect,
                          const SeedBox& seed_box, const FrameOptions& options) {
  const InvariantFunction omega = volume_function(chart);
  const int n = std::max(2, options.seed_count);
  OmegaThetaRect widened = rect;
  if (rect.bounded()) {
    const double mw = 0.1 * (rect.omega_max - rect.omega_min);
    const double mt = 0.1 * (rect.theta_max - rect.theta_min);
    widened = {rect.omega_min - mw, rect.omega_max + mw, rect.theta_min - mt, rect.theta_max + mt};
  }

  auto seeds = std::make_shared<std::vector<Seed>>();
  for (const double x1 : linspace(seed_box.x1_min, seed_box.x1_max, static_cast<std::size_t>(n))) {
    for (const double x2 : linspace(seed_box.x2_min, seed_box.x2_max, static_cast<std::size_t>(n))) {
      const Point2 x{x1, x2};
      if (!chart.contains(x)) continue;
      double w = 0.0, t = 0.0;
      Point2 dw{}, dt{};
      try {
        w = omega(x);
        t = theta(x);
        if (!widened.contains(w, t)) continue;
        dw = coordinate_gradient(chart, omega, x);
        dt = coordinate_gradient(chart, theta, x);
      } catch (const DomainError&) {
        continue;
      }
      const double sine = std::abs(dw[0] * dt[1] - dw[1] * dt[0]) / (norm(dw) * norm(dt));
      if (!(sine >= options.min_jacobian_sine)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "build_frame: (omega, theta) Jacobian degenerate at (%.6g, %.6g)", x1, x2);
        throw RankDeficiencyError(buf);
      }
      seeds->push_back({x, w, t});
    }
  }
  if (seeds->empty()) throw RankDeficiencyError("build_frame: no seed point maps into the declared rect");

  double wmin = INFINITY, wmax = -INFINITY, tmin = INFINITY, tmax = -INFINITY;
  for (const Seed& s : *seeds) {
    wmin = std::min(wmin, s.omega);
    wmax = std::max(wmax, s.omega);
    tmin = std::min(tmin, s.theta);
    tmax = std::max(tmax, s.theta);
  }
  const double sw = wmax > wmin ? wmax - wmin : 1.0;
  const double st = tmax > tmin ? tmax - tmin : 1.0;

  const NewtonOptions newton = options.newton;
  auto invert = [chart, omega, theta, seeds, sw, st, newton](double w, double t) {
    const Seed* best = nullptr;
    double best_d = INFINITY;
    for (const Seed& s : *seeds) {
      const double d = std::hypot((s.omega - w) / sw, (s.theta - t) / st);
      if (d < best_d) {
        best_d = d;
        best = &s;
      }
    }
    return newton_invert(chart, omega, theta, best->x, {w, t}, newton);
  };
  QuotientFrame frame;
  frame.chart = chart;
  frame.omega = omega;
  frame.theta = theta;
  frame.invert = invert;
  frame.rect = rect;
  attach_gradient_norms(frame);
  return frame;
}

nlohmann::json frame_grid_dump(const QuotientFrame& frame, int n) {
  if (!frame.rect.bounded()) throw ConfigError("frame_grid_dump: rect must be bounded");
  nlohmann::json rows = nlohmann::json::array();
  for (const double w : linspace(frame.rect.omega_min, frame.rect.omega_max, static_cast<std::size_t>(n))) {
    for (const double t : linspace(frame.rect.theta_min, frame.rect.theta_max, static_cast<std::size_t>(n))) {
      try {
        const Point2 x = frame.invert(w, t);
        rows.push_back({w, t, x[0], x[1]});
      } catch (const Error&) {
        rows.push_back({w, t, nullptr, nullptr});
      }
    }
  }
  return {{"label", frame.chart.label},
          {"rect", {frame.rect.omega_min, frame.rect.omega_max, frame.rect.theta_min, frame.rect.theta_max}},
          {"columns", {"omega", "theta", "x1", "x2"}},
          {"grid", rows}};
}

// ---- characteristics --------------------------------------------------------

Point2 characteristic_direction(const AdaptedChart3& chart, const InvariantFunction& omega, const Point2& x) {
  const Mat2 block = inverse_metric_block(chart, x);
  const Point2 dw = coordinate_gradient(chart, omega, x);
  const Point2 a{block[0][0] * dw[0] + block[0][1] * dw[1], block[1][0] * dw[0] + block[1][1] * dw[1]};
  const double grad_sq = dw[0] * a[0] + dw[1] * a[1];
  if (!(std::sqrt(std::max(grad_sq, 0.0)) >= 1e-10)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "|grad omega| below 1e-10 at (%.8g, %.8g)", x[0], x[1]);
    throw DegenerateGradientError(buf);
  }
  return {a[0] / grad_sq, a[1] / grad_sq};
}

namespace {

Point2 rk4_step(const AdaptedChart3& chart, const InvariantFunction& omega, const Point2& x, double h) {
  const auto f = [&](const Point2& y) { return characteristic_direction(chart, omega, y); };
  const Point2 k1 = f(x);
  const Point2 k2 = f({x[0] + 0.5 * h * k1[0], x[1] + 0.5 * h * k1[1]});
  const Point2 k3 = f({x[0] + 0.5 * h * k2[0], x[1] + 0.5 * h * k2[1]});
  const Point2 k4 = f({x[0] + h * k3[0], x[1] + h * k3[1]});
  return {x[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
          x[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
}

struct Node {
  double omega;
  Point2 x, dx;
};

// Walks from (w0, x0) towards `limit` in omega; stops at the domain boundary.
void walk(const AdaptedChart3& chart, const InvariantFunction& omega, double w0, Point2 x0, double limit,
          double step, std::vector<Node>& out) {
  const double dir = limit > w0 ? 1.0 : -1.0;
  double w = w0;
  Point2 x = x0;
  while (dir * (limit - w) > 1e-14 * std::max(1.0, std::abs(limit))) {
    const double h = dir * std::min(step, dir * (limit - w));
    Point2 next;
    Point2 slope;
    try {
      next = rk4_step(chart, omega, x, h);
      slope = characteristic_direction(chart, omega, next);
    } catch (const DomainError&) {
      return;
    } catch (const SingularMetricError&) {
      return;
    }
    w += h;
    x = next;
    out.push_back({w, x, slope});
  }
}

Characteristic trace_one(const AdaptedChart3& chart, const InvariantFunction& omega,
                         const std::function<Point2(double)>& cauchy, double sigma,
                         const CharacteristicOptions& options, double step) {
  const Point2 x0 = cauchy(sigma);
  const double w0 = omega(x0);
  if (!(w0 >= options.omega_min && w0 <= options.omega_max)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "Cauchy point at sigma=%.8g has omega=%.8g outside [%.8g, %.8g]", sigma, w0,
                  options.omega_min, options.omega_max);
    throw DomainError(buf);
  }
  const double d = 1e-6 * std::max(1.0, std::abs(sigma));
  const Point2 cp = cauchy(sigma + d), cm = cauchy(sigma - d);
  const Point2 tangent{(cp[0] - cm[0]) / (2 * d), (cp[1] - cm[1]) / (2 * d)};
  const Point2 dir0 = characteristic_direction(chart, omega, x0);
  const double sine = std::abs(tangent[0] * dir0[1] - tangent[1] * dir0[0]) / (norm(tangent) * norm(dir0));
  if (!(sine > std::sin(options.min_angle))) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "Cauchy curve nearly tangent to a characteristic at sigma=%.8g (angle %.3g rad)", sigma,
                  std::asin(std::min(1.0, sine)));
    throw TransversalityError(buf);
  }
  std::vector<Node> down, up;
  walk(chart, omega, w0, x0, options.omega_min, step, down);
  walk(chart, omega, w0, x0, options.omega_max, step, up);
  std::vector<Node> nodes(down.rbegin(), down.rend());
  nodes.push_back({w0, x0, dir0});
  nodes.insert(nodes.end(), up.begin(), up.end());
  if (nodes.size() < 2) throw DomainError("characteristic through the Cauchy point cannot be traced");

  std::vector<double> w(nodes.size()), a(nodes.size()), b(nodes.size()), da(nodes.size()), db(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    w[k] = nodes[k].omega;
    a[k] = nodes[k].x[0];
    b[k] = nodes[k].x[1];
    da[k] = nodes[k].dx[0];
    db[k] = nodes[k].dx[1];
  }
  Characteristic c;
  c.sigma = sigma;
  c.x1 = HermiteSpline(w, std::move(a), std::move(da));
  c.x2 = HermiteSpline(std::move(w), std::move(b), std::move(db));
  return c;
}

double default_step(std::span<const double> arc_grid, const CharacteristicOptions& options) {
  if (options.step > 0.0) return options.step;
  return std::abs(arc_grid.back() - arc_grid.front()) / 400.0;
}

void check_trace_options(std::span<const double> arc_grid, const CharacteristicOptions& options) {
  if (arc_grid.size() < 2) throw ConfigError("trace_characteristics: need at least 2 Cauchy samples");
  if (!(options.omega_max > options.omega_min))
    throw ConfigError("trace_characteristics: omega_max must exceed omega_min");
}

}  // namespace

std::vector<Characteristic> trace_characteristics_serial(const AdaptedChart3& chart,
                                                         const std::function<Point2(double)>& cauchy,
                                                         std::span<const double> arc_grid,
                                                         const CharacteristicOptions& options) {
  check_trace_options(arc_grid, options);
  const InvariantFunction omega = volume_function(chart);
  const double step = default_step(arc_grid, options);
  std::vector<Characteristic> out;
  out.reserve(arc_grid.size());
  for (const double sigma : arc_grid) out.push_back(trace_one(chart, omega, cauchy, sigma, options, step));
  return out;
}

std::vector<Characteristic> trace_characteristics(const AdaptedChart3& chart,
                                                  const std::function<Point2(double)>& cauchy,
                                                  std::span<const double> arc_grid,
                                                  const CharacteristicOptions& options) {
  check_trace_options(arc_grid, options);
  const InvariantFunction omega = volume_function(chart);
  const double step = default_step(arc_grid, options);
  const long n = static_cast<long>(arc_grid.size());
  std::vector<Characteristic> out(arc_grid.size());
  std::vector<std::exception_ptr> errors(arc_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = trace_one(chart, omega, cauchy, arc_grid[i], options, step);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

TracedInvariant::TracedInvariant(AdaptedChart3 chart, std::function<Point2(double)> cauchy,
                                 std::vector<Characteristic> grid, CharacteristicOptions options)
    : chart_(std::move(chart)),
      omega_(volume_function(chart_)),
      cauchy_(std::move(cauchy)),
      grid_(std::move(grid)),
      options_(options) {}

Point2 TracedInvariant::shoot(double sigma, double omega_target) const {
  Point2 x = cauchy_(sigma);
  const double w0 = omega_(x);
  const double h = (omega_target - w0) / options_.shooting_steps;
  for (int k = 0; k < options_.shooting_steps; ++k) x = rk4_step(chart_, omega_, x, h);
  return x;
}

double TracedInvariant::seed(const Point2& p) const {
  const double w = omega_(p);
  const Point2 dw = coordinate_gradient(chart_, omega_, p);
  const double len = norm(dw);
  const Point2 t{-dw[1] / len, dw[0] / len};

  std::optional<double> prev_d;
  std::optional<double> best;
  double best_width = INFINITY;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const Characteristic& c = grid_[i];
    if (w < c.omega_lo() || w > c.omega_hi()) {
      prev_d.reset();
      continue;
    }
    const double d = (c.x1(w) - p[0]) * t[0] + (c.x2(w) - p[1]) * t[1];
    if (prev_d && (*prev_d) * d <= 0.0) {
      const double width = std::abs(d - *prev_d);
      if (width < best_width) {
        best_width = width;
        const double frac = d == *prev_d ? 0.0 : -(*prev_d) / (d - *prev_d);
        best = grid_[i - 1].sigma + frac * (c.sigma - grid_[i - 1].sigma);
      }
    }
    prev_d = d;
  }
  if (!best) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "point (%.8g, %.8g) outside the swept region", p[0], p[1]);
    throw DomainError(buf);
  }
  return *best;
}

double TracedInvariant::operator()(const Point2& p) const {
  const double w = omega_(p);
  const Point2 dw = coordinate_gradient(chart_, omega_, p);
  const double len = norm(dw);
  const Point2 t{-dw[1] / len, dw[0] / len};
  const auto f = [&](double sigma) {
    const Point2 y = shoot(sigma, w);
    return (y[0] - p[0]) * t[0] + (y[1] - p[1]) * t[1];
  };

  const double spacing = std::abs(grid_.back().sigma - grid_.front().sigma) / static_cast<double>(grid_.size());
  double s0 = seed(p);
  double f0 = f(s0);
  if (f0 == 0.0) return s0;
  double s1 = s0 + 1e-3 * spacing;
  double f1 = f(s1);
  for (int it = 0; it < options_.max_iterations; ++it) {
    if (f1 == 0.0 || f1 == f0) return s1;
    const double s2 = s1 - f1 * (s1 - s0) / (f1 - f0);
    s0 = s1;
    f0 = f1;
    s1 = s2;
    if (std::abs(s1 - s0) <= options_.tolerance * std::max(1.0, std::abs(s1))) return s1;
    f1 = f(s1);
  }
  throw NewtonDivergenceError("orthogonal invariant: shooting did not converge", std::abs(f1));
}

InvariantFunction solve_orthogonal_invariant(const AdaptedChart3& chart, std::function<Point2(double)> cauchy,
                                             std::span<const double> arc_grid, CharacteristicOptions options) {
  auto grid = trace_characteristics(chart, cauchy, arc_grid, options);
  auto traced = std::make_shared<const TracedInvariant>(chart, std::move(cauchy), std::move(grid), options);
  InvariantFunction theta;
  theta.value = [traced](double x1, double x2) { return (*traced)({x1, x2}); };
  return theta;
}

}  // namespace bourgen
