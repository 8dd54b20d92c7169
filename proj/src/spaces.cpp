#include "bourgen/spaces.hpp"

#include <cmath>
#include <cstdio>

#include "bourgen/errors.hpp"

namespace bourgen {

SpaceKind parse_space_kind(const std::string& name) {
  if (name == "euclidean_helicoidal") return SpaceKind::euclidean_helicoidal;
  if (name == "euclidean_rotational") return SpaceKind::euclidean_rotational;
  if (name == "bcv_helicoidal") return SpaceKind::bcv_helicoidal;
  throw SpecError("unknown space kind '" + name + "'");
}

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean_helicoidal: return "euclidean_helicoidal";
    case SpaceKind::euclidean_rotational: return "euclidean_rotational";
    default: return "bcv_helicoidal";
  }
}

void SpaceSpec::validate() const {
  if (!std::isfinite(a) || !std::isfinite(kappa) || !std::isfinite(tau)) throw SpecError("space parameters must be finite");
  if (kind != SpaceKind::euclidean_rotational && a == 0.0)
    throw SpecError(std::string(to_string(kind)) + " requires a non-zero pitch a (use euclidean_rotational for a = 0)");
}

nlohmann::json SpaceSpec::to_json() const {
  return {{"kind", to_string(kind)}, {"a", a}, {"kappa", kappa}, {"tau", tau}};
}

SpaceSpec SpaceSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("space: object with 'kind' required");
  SpaceSpec spec;
  spec.kind = parse_space_kind(j.at("kind").get<std::string>());
  spec.a = j.value("a", spec.kind == SpaceKind::euclidean_rotational ? 0.0 : 1.0);
  spec.kappa = j.value("kappa", 0.0);
  spec.tau = j.value("tau", 0.0);
  if (spec.kind == SpaceKind::euclidean_rotational && spec.a != 0.0)
    throw SpecError("euclidean_rotational has pitch a = 0");
  spec.validate();
  return spec;
}

namespace {

AdaptedChart3 euclidean_helicoidal_chart(double a) {
  AdaptedChart3 c;
  c.g11 = [](double, double) { return 1.0; };
  c.g12 = [](double, double) { return 0.0; };
  c.g22 = [](double, double) { return 1.0; };
  c.g13 = [](double, double x2) { return x2; };
  c.g23 = [](double x1, double) { return -x1; };
  c.g33 = [a](double x1, double x2) { return x1 * x1 + x2 * x2 + a * a; };
  c.volume_gradient = [a](double x1, double x2) {
    const double w = std::sqrt(x1 * x1 + x2 * x2 + a * a);
    return Point2{x1 / w, x2 / w};
  };
  char buf[64];
  std::snprintf(buf, sizeof buf, "euclidean_helicoidal(a=%g)", a);
  c.label = buf;
  return c;
}

AdaptedChart3 euclidean_rotational_chart() {
  AdaptedChart3 c;
  c.g11 = [](double, double) { return 1.0; };
  c.g12 = [](double, double) { return 0.0; };
  c.g22 = [](double, double) { return 1.0; };
  c.g13 = [](double, double) { return 0.0; };
  c.g23 = [](double, double) { return 0.0; };
  c.g33 = [](double x1, double) { return x1 * x1; };
  c.domain = [](double x1, double) { return x1 > 0.0; };
  c.volume_gradient = [](double, double) { return Point2{1.0, 0.0}; };
  c.label = "euclidean_rotational";
  return c;
}

AdaptedChart3 bcv_chart(double a, double kappa, double tau) {
  AdaptedChart3 c;
  const auto B = [kappa](double x1, double x2) { return 1.0 + 0.25 * kappa * (x1 * x1 + x2 * x2); };
  const auto C = [a, tau, B](double x1, double x2) { return a * B(x1, x2) - tau * (x1 * x1 + x2 * x2); };
  c.g11 = [tau, B](double x1, double x2) {
    const double b = B(x1, x2);
    return (1.0 + tau * tau * x2 * x2) / (b * b);
  };
  c.g22 = [tau, B](double x1, double x2) {
    const double b = B(x1, x2);
    return (1.0 + tau * tau * x1 * x1) / (b * b);
  };
  c.g12 = [tau, B](double x1, double x2) {
    const double b = B(x1, x2);
    return -x1 * x2 * tau * tau / (b * b);
  };
  c.g13 = [tau, B, C](double x1, double x2) {
    const double b = B(x1, x2);
    return (tau * C(x1, x2) - 1.0) * x2 / (b * b);
  };
  c.g23 = [tau, B, C](double x1, double x2) {
    const double b = B(x1, x2);
    return -(tau * C(x1, x2) - 1.0) * x1 / (b * b);
  };
  c.g33 = [B, C](double x1, double x2) {
    const double b = B(x1, x2), cc = C(x1, x2);
    return (cc * cc + x1 * x1 + x2 * x2) / (b * b);
  };
  c.domain = [B](double x1, double x2) { return B(x1, x2) > 0.0; };
  // omega^2 = (C^2 + q) / B^2 with q = r^2
  c.volume_gradient = [a, kappa, tau](double x1, double x2) {
    const double q = x1 * x1 + x2 * x2;
    const double b = 1.0 + 0.25 * kappa * q, cc = a * b - tau * q;
    const double bq = 0.25 * kappa, cq = a * bq - tau;
    const double w2 = (cc * cc + q) / (b * b);
    const double dw2 = ((2.0 * cc * cq + 1.0) * b - 2.0 * (cc * cc + q) * bq) / (b * b * b);
    const double k = dw2 / std::sqrt(w2);  // d omega / dq * 2
    return Point2{k * x1, k * x2};
  };
  char buf[96];
  std::snprintf(buf, sizeof buf, "bcv_helicoidal(a=%g, kappa=%g, tau=%g)", a, kappa, tau);
  c.label = buf;
  return c;
}

InvariantFunction slope_theta() {
  InvariantFunction t;
  t.value = [](double x1, double x2) {
    if (x1 == 0.0) throw DomainError("theta = x2/x1 undefined at x1 = 0");
    return x2 / x1;
  };
  t.gradient = [](double x1, double x2) { return Point2{-x2 / (x1 * x1), 1.0 / x1}; };
  return t;
}

[[noreturn]] void invert_fail(double w, double t) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(omega, theta) = (%.10g, %.10g) outside the chart image", w, t);
  throw DomainError(buf);
}

}  // namespace

AdaptedChart3 make_chart(const SpaceSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case SpaceKind::euclidean_helicoidal: return euclidean_helicoidal_chart(spec.a);
    case SpaceKind::euclidean_rotational: return euclidean_rotational_chart();
    default: return bcv_chart(spec.a, spec.kappa, spec.tau);
  }
}

BuiltinSpace make_space(const SpaceSpec& spec) {
  BuiltinSpace out{spec, make_chart(spec), {}, {}};
  const double a = spec.a, kappa = spec.kappa, tau = spec.tau;
  std::function<Point2(double, double)> invert;
  OmegaThetaRect rect;
  switch (spec.kind) {
    case SpaceKind::euclidean_rotational:
      out.theta.value = [](double, double x2) { return x2; };
      out.theta.gradient = [](double, double) { return Point2{0.0, 1.0}; };
      invert = [](double w, double t) {
        if (!(w > 0.0)) invert_fail(w, t);
        return Point2{w, t};
      };
      break;
    case SpaceKind::euclidean_helicoidal:
      out.theta = slope_theta();
      invert = [a](double w, double t) {
        const double q = w * w - a * a;
        if (!(q > 0.0)) invert_fail(w, t);
        const double x1 = std::sqrt(q / (1.0 + t * t));
        return Point2{x1, t * x1};
      };
      rect.omega_min = std::abs(a);
      break;
    default:
      out.theta = slope_theta();
      invert = [a, kappa, tau](double w, double t) {
        const double q = w * w - a * a;
        const double delta = (1.0 - 2.0 * a * tau) * (1.0 - 2.0 * a * tau) + (4.0 * tau * tau - kappa) * q;
        if (!(q > 0.0) || !(delta >= 0.0)) invert_fail(w, t);
        const double den = (1.0 + std::sqrt(delta)) * (1.0 + std::sqrt(delta)) - 4.0 * tau * tau * w * w;
        if (!(den > 0.0)) invert_fail(w, t);
        const double x1 = std::sqrt(4.0 * q / den / (1.0 + t * t));
        return Point2{x1, t * x1};
      };
      rect.omega_min = std::abs(a);
      break;
  }
  out.frame = analytic_frame(out.chart, out.theta, std::move(invert), rect);
  return out;
}

Point3 ClosedFormFamily::cylindrical(std::size_t k, double t) const {
  const double v = t / m + V.at(k);
  const double sign = space.kind == SpaceKind::bcv_helicoidal ? -1.0 : 1.0;
  return {rho.at(k), v, sign * lambda.at(k) + space.a * v};
}

namespace {

double clamp_radicand(double x) { return std::abs(x) < 1e-12 ? 0.0 : x; }

[[noreturn]] void violation(double s, const char* which, double value) { throw DomainViolationError(s, which, value); }

void check_grid(std::span<const double> s_grid) {
  if (s_grid.size() < 2) throw ConfigError("closed form: at least 2 grid points required");
  for (std::size_t k = 1; k < s_grid.size(); ++k)
    if (!(s_grid[k] > s_grid[k - 1])) throw ConfigError("closed form: grid must be increasing");
}

}  // namespace

ClosedFormFamily r3_closed_form(const GeneratrixMetric& U, double m, int epsilon, double a,
                                std::span<const double> s_grid) {
  check_grid(s_grid);
  if (!(m > 0.0)) throw ConfigError("m must be positive");
  const std::size_t n = s_grid.size();
  ClosedFormFamily f;
  f.space = {a == 0.0 ? SpaceKind::euclidean_rotational : SpaceKind::euclidean_helicoidal, a, 0.0, 0.0};
  f.m = m;
  f.epsilon = epsilon;
  f.s.assign(s_grid.begin(), s_grid.end());
  f.rho.resize(n);
  std::vector<double> dl(n), dv(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = s_grid[k];
    const double mu = m * U(s), mdu = m * U.derivative(s);
    const double rho2 = mu * mu - a * a;
    if (!(rho2 > 0.0)) violation(s, "m^2 U^2 - a^2", rho2);
    const double r = clamp_radicand(mu * mu * (1.0 - mdu * mdu) - a * a);
    if (r < 0.0) violation(s, "m^2 U^2 (1 - m^2 U'^2) - a^2", r);
    f.rho[k] = std::sqrt(rho2);
    dl[k] = epsilon * mu * std::sqrt(r) / rho2;
    dv[k] = -epsilon * a * std::sqrt(r) / (mu * rho2);
  }
  f.lambda = cumulative_simpson(f.s, dl);
  f.V = cumulative_simpson(f.s, dv);
  return f;
}

ClosedFormFamily bcv_closed_form(const GeneratrixMetric& U, double m, int epsilon, double kappa, double tau,
                                 double a, std::span<const double> s_grid) {
  check_grid(s_grid);
  if (!(m > 0.0)) throw ConfigError("m must be positive");
  const std::size_t n = s_grid.size();
  ClosedFormFamily f;
  f.space = {SpaceKind::bcv_helicoidal, a, kappa, tau};
  f.m = m;
  f.epsilon = epsilon;
  f.s.assign(s_grid.begin(), s_grid.end());
  f.rho.resize(n);
  std::vector<double> dl(n), dv(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = s_grid[k];
    const double mu = m * U(s), du = U.derivative(s);
    const double q = mu * mu - a * a;
    if (!(q > 0.0)) violation(s, "m^2 U^2 - a^2", q);
    const double delta = (1.0 - 2.0 * a * tau) * (1.0 - 2.0 * a * tau) + (4.0 * tau * tau - kappa) * q;
    if (!(delta > 0.0)) violation(s, "Delta", delta);
    const double den = (1.0 + std::sqrt(delta)) * (1.0 + std::sqrt(delta)) - 4.0 * tau * tau * mu * mu;
    if (!(den > 0.0)) violation(s, "(1 + sqrt(Delta))^2 - 4 tau^2 m^2 U^2", den);
    const double rho2 = 4.0 * q / den;
    const double b = 1.0 + 0.25 * kappa * rho2;
    if (!(b > 0.0)) violation(s, "B", b);
    const double w = 4.0 + kappa * rho2;
    const double inner = clamp_radicand(rho2 - mu * mu * m * m * du * du * w * w / (16.0 * delta));
    if (inner < 0.0) violation(s, "rho^2 - m^4 U^2 U'^2 (4 + kappa rho^2)^2 / (16 Delta)", inner);
    f.rho[k] = std::sqrt(rho2);
    dl[k] = epsilon * mu * w / (4.0 * rho2) * std::sqrt(inner);
    dv[k] = -epsilon * ((4.0 * tau - a * kappa) * rho2 - 4.0 * a) / (4.0 * mu * rho2) * std::sqrt(inner);
  }
  f.lambda = cumulative_simpson(f.s, dl);
  f.V = cumulative_simpson(f.s, dv);
  return f;
}

ClosedFormFamily closed_form(const SpaceSpec& spec, const GeneratrixMetric& U, double m, int epsilon,
                             std::span<const double> s_grid) {
  switch (spec.kind) {
    case SpaceKind::euclidean_rotational: return r3_closed_form(U, m, epsilon, 0.0, s_grid);
    case SpaceKind::euclidean_helicoidal: return r3_closed_form(U, m, epsilon, spec.a, s_grid);
    default: return bcv_closed_form(U, m, epsilon, spec.kappa, spec.tau, spec.a, s_grid);
  }
}

Point3 to_ambient_coords(const SpaceSpec& spec, const Point3& p) {
  const double x1 = p[0], x2 = p[1], x3 = p[2];
  switch (spec.kind) {
    case SpaceKind::euclidean_helicoidal:
      return {x1 * std::cos(x3) + x2 * std::sin(x3), x2 * std::cos(x3) - x1 * std::sin(x3), spec.a * x3};
    case SpaceKind::euclidean_rotational:
      return {x1 * std::cos(x3), x1 * std::sin(x3), x2};
    default:
      return {std::hypot(x1, x2), x3 + std::atan2(x2, x1), spec.a * x3};
  }
}

Point3 to_display_coords(const SpaceSpec& spec, const Point3& p) {
  const Point3 q = to_ambient_coords(spec, p);
  if (spec.kind != SpaceKind::bcv_helicoidal) return q;
  return {q[0] * std::cos(q[1]), q[0] * std::sin(q[1]), q[2]};
}

}  // namespace bourgen
