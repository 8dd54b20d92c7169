#include "bourgen/natural.hpp"

#include <cmath>
#include <cstdio>

#include "bourgen/errors.hpp"

namespace bourgen {

LiftedCurve::LiftedCurve(std::vector<CurveSample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 4) throw ConfigError("lifted curve: at least 4 samples required");
  for (std::size_t k = 1; k < samples_.size(); ++k)
    if (!(samples_[k].u > samples_[k - 1].u)) throw ConfigError("lifted curve: u must be strictly increasing");
}

std::vector<Point3> LiftedCurve::derivatives() const {
  const std::size_t n = samples_.size();
  std::vector<double> u(n), a(n), b(n), c(n);
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = samples_[k].u;
    a[k] = samples_[k].x1;
    b[k] = samples_[k].x2;
    c[k] = samples_[k].x3;
  }
  const auto da = finite_difference_slopes(u, a);
  const auto db = finite_difference_slopes(u, b);
  const auto dc = finite_difference_slopes(u, c);
  std::vector<Point3> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = {da[k], db[k], dc[k]};
  return out;
}

std::vector<PullbackSample> pullback_coefficients(const AdaptedChart3& chart, const LiftedCurve& curve) {
  const auto d = curve.derivatives();
  std::vector<PullbackSample> out;
  out.reserve(curve.size());
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const CurveSample& p = curve.samples()[k];
    const Mat3 g = metric_at(chart, {p.x1, p.x2});
    double e = 0.0, f = 0.0;
    for (int i = 0; i < 3; ++i) {
      f += d[k][i] * g[i][2];
      for (int j = 0; j < 3; ++j) e += d[k][i] * g[i][j] * d[k][j];
    }
    out.push_back({p.u, e, f, g[2][2]});
  }
  return out;
}

NaturalParameters to_natural(std::span<const PullbackSample> coeffs) {
  const std::size_t n = coeffs.size();
  if (n < 4) throw ConfigError("to_natural: at least 4 samples required");
  std::vector<double> u(n), speed(n), fg(n), g(n);
  for (std::size_t k = 0; k < n; ++k) {
    const PullbackSample& c = coeffs[k];
    if (!(c.G > 0.0)) throw DomainError("to_natural: G must be positive");
    const double r = c.E - c.F * c.F / c.G;
    if (!(r > kOrbitTangencyEta)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "curve tangent to the orbits at u=%.10g (E - F^2/G = %.3g)", c.u, r);
      throw DegenerateParametrizationError(buf);
    }
    u[k] = c.u;
    speed[k] = std::sqrt(r);
    fg[k] = c.F / c.G;
    g[k] = c.G;
  }

  const std::vector<double> s = cumulative_simpson(u, speed);
  std::vector<double> du_ds(n);
  for (std::size_t k = 0; k < n; ++k) du_ds[k] = 1.0 / speed[k];

  // U = sqrt(G); dU/ds = G'(u) / (2 sqrt(G)) * du/ds
  const auto dg = finite_difference_slopes(u, g);
  std::vector<double> uu(n), du(n);
  for (std::size_t k = 0; k < n; ++k) {
    uu[k] = std::sqrt(g[k]);
    du[k] = dg[k] / (2.0 * uu[k]) * du_ds[k];
  }
  return NaturalParameters{u,
                           s,
                           HermiteSpline(u, s, speed),
                           HermiteSpline(s, u, du_ds),
                           HermiteSpline(u, cumulative_simpson(u, fg), fg),
                           GeneratrixMetric::from_spline(HermiteSpline(s, std::move(uu), std::move(du)))};
}

SurfaceMember natural_member(const AdaptedChart3& chart, const LiftedCurve& curve, const NaturalParameters& nat) {
  if (nat.s.size() != curve.size()) throw GridMismatchError("natural_member: curve and parameters differ in size");
  const auto d = curve.derivatives();
  std::vector<MemberSample> samples;
  samples.reserve(curve.size());
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const CurveSample& p = curve.samples()[k];
    const double du_ds = nat.u_of_s.slopes()[k];
    MemberSample m;
    m.s = nat.s[k];
    m.x1 = p.x1;
    m.x2 = p.x2;
    m.omega = volume_at(chart, {p.x1, p.x2});
    m.theta = 0.0;
    m.V = p.x3 - nat.t_shift.values()[k];
    m.dx1 = d[k][0] * du_ds;
    m.dx2 = d[k][1] * du_ds;
    m.dV = (d[k][2] - nat.t_shift.slopes()[k]) * du_ds;
    m.U = nat.U.table()->values()[k];
    m.dU = nat.U.table()->slopes()[k];
    samples.push_back(m);
  }
  MemberMetadata meta;
  meta.m = 1.0;
  meta.epsilon = 1;
  meta.chart_label = chart.label;
  meta.generatrix = "natural";
  return SurfaceMember(std::move(samples), std::move(meta));
}

}  // namespace bourgen
