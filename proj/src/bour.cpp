#include "bourgen/bour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bourgen/errors.hpp"

namespace bourgen {

Integrator parse_integrator(const std::string& name) {
  if (name == "rk4") return Integrator::rk4;
  if (name == "euler") return Integrator::euler;
  throw ConfigError("unknown integrator '" + name + "' (expected rk4 or euler)");
}

const char* to_string(Integrator integrator) { return integrator == Integrator::rk4 ? "rk4" : "euler"; }

void BourParams::validate() const {
  if (!(m > 0.0)) throw ConfigError("m must be positive");
  if (epsilon != 1 && epsilon != -1) throw ConfigError("epsilon must be +1 or -1");
  if (!(s_max > s_min)) throw ConfigError("s_range must be increasing");
  if (!(step > 0.0)) throw ConfigError("step must be positive");
  if (step > (s_max - s_min) / 10.0 * (1.0 + 1e-12))
    throw ConfigError("step must not exceed a tenth of the s range");
}

std::vector<double> BourParams::grid() const {
  const auto n = static_cast<std::size_t>(std::ceil((s_max - s_min) / step - 1e-9));
  return linspace(s_min, s_max, n + 1);
}

double ode_rhs(double s, double theta, const GeneratrixMetric& U, const BourParams& params,
               const QuotientFrame& frame) {
  const double w = params.m * U(s);
  if (!frame.rect.contains(w, theta)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "(omega, theta) = (%.10g, %.10g) left the frame rect at s=%.10g", w, theta, s);
    throw RectExitError(buf);
  }
  const double gw2 = frame.grad_omega_sq(w, theta);
  const double gt2 = frame.grad_theta_sq(w, theta);
  const double dw = params.m * U.derivative(s);
  double radicand = gw2 - dw * dw;
  if (std::abs(radicand) < kRadicandClamp) radicand = 0.0;
  if (radicand < 0.0) throw RadicandNegativeError(s, radicand);
  return params.epsilon * std::sqrt(gt2) * std::sqrt(radicand) / std::sqrt(gw2);
}

namespace {

// Stage points other than the node itself: leaving the rect means the step is too large.
double stage_rhs(double s, double theta, const GeneratrixMetric& U, const BourParams& params,
                 const QuotientFrame& frame) {
  try {
    return ode_rhs(s, theta, U, params, frame);
  } catch (const RectExitError& e) {
    throw StepTooLargeError(std::string("RK4 stage point outside the frame rect: ") + e.what());
  }
}

ProfileSample make_sample(double s, double theta, double dtheta, const GeneratrixMetric& U,
                          const BourParams& params, const QuotientFrame& frame) {
  ProfileSample p{};
  p.s = s;
  p.omega = params.m * U(s);
  p.theta = theta;
  p.domega = params.m * U.derivative(s);
  p.dtheta = dtheta;
  const Point2 x = frame.invert(p.omega, theta);
  p.x1 = x[0];
  p.x2 = x[1];
  // (omega', theta') = J x'
  const Mat2 inv = inverse(frame.jacobian(x));
  p.dx1 = inv[0][0] * p.domega + inv[0][1] * dtheta;
  p.dx2 = inv[1][0] * p.domega + inv[1][1] * dtheta;
  return p;
}

}  // namespace

ProfileCurve integrate_profile(const GeneratrixMetric& U, const BourParams& params, const QuotientFrame& frame,
                               double theta0) {
  params.validate();
  const std::vector<double> grid = params.grid();
  ProfileCurve out;
  out.frame = frame;
  out.m = params.m;
  out.epsilon = params.epsilon;
  out.theta0 = theta0;
  out.samples.reserve(grid.size());

  double theta = theta0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double s = grid[k];
    const double k1 = ode_rhs(s, theta, U, params, frame);
    out.samples.push_back(make_sample(s, theta, k1, U, params, frame));
    if (k + 1 == grid.size()) break;
    const double h = grid[k + 1] - s;
    if (params.integrator == Integrator::euler) {
      theta += h * k1;
    } else {
      const double k2 = stage_rhs(s + 0.5 * h, theta + 0.5 * h * k1, U, params, frame);
      const double k3 = stage_rhs(s + 0.5 * h, theta + 0.5 * h * k2, U, params, frame);
      const double k4 = stage_rhs(s + h, theta + h * k3, U, params, frame);
      theta += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return out;
}

VerticalProfile vertical_quadrature(const ProfileCurve& profile, const AdaptedChart3& chart,
                                    const BourParams& params, const GeneratrixMetric& U) {
  const std::size_t n = profile.samples.size();
  VerticalProfile out;
  out.s.resize(n);
  out.dV.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const ProfileSample& p = profile.samples[k];
    const Mat3 g = metric_at(chart, {p.x1, p.x2});
    const double u = U(p.s);
    out.s[k] = p.s;
    out.dV[k] = -(p.dx1 * g[0][2] + p.dx2 * g[1][2]) / (params.m * params.m * u * u);
  }
  out.V = cumulative_simpson(out.s, out.dV);
  return out;
}

SurfaceMember assemble_member(const ProfileCurve& profile, const VerticalProfile& vertical, const BourParams& params,
                              const GeneratrixMetric& U) {
  const std::size_t n = profile.samples.size();
  if (vertical.s.size() != n || vertical.V.size() != n || vertical.dV.size() != n)
    throw GridMismatchError("assemble_member: profile and V differ in length");
  std::vector<MemberSample> samples(n);
  for (std::size_t k = 0; k < n; ++k) {
    const ProfileSample& p = profile.samples[k];
    if (std::abs(vertical.s[k] - p.s) > 1e-12 * std::max(1.0, std::abs(p.s)))
      throw GridMismatchError("assemble_member: profile and V use different s grids");
    samples[k] = {p.s, p.x1, p.x2, p.omega, p.theta, vertical.V[k], p.dx1, p.dx2, vertical.dV[k],
                  U(p.s), U.derivative(p.s)};
  }
  MemberMetadata meta;
  meta.m = params.m;
  meta.epsilon = params.epsilon;
  meta.theta0 = profile.theta0;
  meta.chart_label = profile.frame.chart.label;
  meta.generatrix = U.description();
  return SurfaceMember(std::move(samples), std::move(meta));
}

SurfaceMember generate_member(const GeneratrixMetric& U, const BourParams& params, const QuotientFrame& frame,
                              double theta0) {
  const ProfileCurve profile = integrate_profile(U, params, frame, theta0);
  const VerticalProfile vertical = vertical_quadrature(profile, frame.chart, params, U);
  return assemble_member(profile, vertical, params, U);
}

AdaptedChart3 rescale_killing(const AdaptedChart3& chart, double c) {
  if (!(std::abs(c) > 0.0)) throw ConfigError("rescale_killing: factor must be non-zero");
  AdaptedChart3 out = chart;
  const auto g13 = chart.g13, g23 = chart.g23, g33 = chart.g33;
  out.g13 = [g13, c](double x1, double x2) { return g13(x1, x2) / c; };
  out.g23 = [g23, c](double x1, double x2) { return g23(x1, x2) / c; };
  out.g33 = [g33, c](double x1, double x2) { return g33(x1, x2) / (c * c); };
  if (chart.volume_gradient) {
    const auto vg = chart.volume_gradient;
    const double a = std::abs(c);
    out.volume_gradient = [vg, a](double x1, double x2) {
      const Point2 d = vg(x1, x2);
      return Point2{d[0] / a, d[1] / a};
    };
  }
  return out;
}

SurfaceMember constant_volume_member(const AdaptedChart3& chart, const LiftedCurve& profile_curve) {
  const auto& pts = profile_curve.samples();
  double lo1 = INFINITY, hi1 = -INFINITY, lo2 = INFINITY, hi2 = -INFINITY;
  std::vector<Point2> probe;
  for (const CurveSample& p : pts) {
    lo1 = std::min(lo1, p.x1);
    hi1 = std::max(hi1, p.x1);
    lo2 = std::min(lo2, p.x2);
    hi2 = std::max(hi2, p.x2);
    probe.push_back({p.x1, p.x2});
  }
  const double m1 = 0.1 * std::max(hi1 - lo1, 1.0), m2 = 0.1 * std::max(hi2 - lo2, 1.0);
  for (const double x1 : linspace(lo1 - m1, hi1 + m1, 11))
    for (const double x2 : linspace(lo2 - m2, hi2 + m2, 11))
      if (chart.contains({x1, x2})) probe.push_back({x1, x2});

  double wmin = INFINITY, wmax = -INFINITY;
  for (const Point2& x : probe) {
    const double w = volume_at(chart, x);
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
  }
  if ((wmax - wmin) > 1e-10 * wmax) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "volume function varies from %.10g to %.10g", wmin, wmax);
    throw NonConstantVolumeError(buf);
  }
  if (std::abs(wmax - 1.0) > 1e-10) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "volume function is constant %.10g, not 1; rescale the Killing field first", wmax);
    throw NonConstantVolumeError(buf);
  }

  const auto d = profile_curve.derivatives();
  const std::size_t n = pts.size();
  std::vector<double> s(n), dv(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Mat3 g = metric_at(chart, {pts[k].x1, pts[k].x2});
    s[k] = pts[k].u;
    dv[k] = -(d[k][0] * g[0][2] + d[k][1] * g[1][2]);
  }
  const std::vector<double> v = cumulative_simpson(s, dv);
  std::vector<MemberSample> samples(n);
  for (std::size_t k = 0; k < n; ++k)
    samples[k] = {s[k], pts[k].x1, pts[k].x2, 1.0, 0.0, v[k], d[k][0], d[k][1], dv[k], 1.0, 0.0};
  MemberMetadata meta;
  meta.chart_label = chart.label;
  meta.generatrix = "1";
  return SurfaceMember(std::move(samples), std::move(meta));
}

}  // namespace bourgen
