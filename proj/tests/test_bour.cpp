#include <gtest/gtest.h>

#include <cmath>

#include "bourgen/bour.hpp"
#include "bourgen/errors.hpp"
#include "bourgen/expression.hpp"
#include "bourgen/spaces.hpp"

using namespace bourgen;

namespace {

const SpaceSpec kRotational{SpaceKind::euclidean_rotational, 0.0, 0.0, 0.0};
const SpaceSpec kHelicoidal{SpaceKind::euclidean_helicoidal, 1.0, 0.0, 0.0};
const SpaceSpec kBcv111{SpaceKind::bcv_helicoidal, 1.0, 1.0, 1.0};

GeneratrixMetric gen(const char* text, double lo, double hi) {
  return GeneratrixMetric::from_expression(Expression::parse(text), lo, hi);
}

BourParams params(double m, int eps, double lo, double hi, double step, Integrator in = Integrator::rk4) {
  return {m, eps, lo, hi, step, in};
}

double catenoid_error(double step) {
  const auto space = make_space(kRotational);
  const auto U = gen("sqrt(s^2+1)", -2, 2);
  const auto prof = integrate_profile(U, params(1, 1, -2, 2, step), space.frame, std::asinh(-2.0));
  double e = 0.0;
  for (const auto& p : prof.samples) e = std::max(e, std::abs(p.theta - std::asinh(p.s)));
  return e;
}

}  // namespace

TEST(OdeRhs, RotationalCatenoidAtZero) {
  const auto space = make_space(kRotational);
  const auto U = gen("sqrt(s^2+1)", -2, 2);
  EXPECT_NEAR(ode_rhs(0.0, 0.0, U, params(1, 1, -2, 2, 0.01), space.frame), 1.0, 1e-14);
  EXPECT_NEAR(ode_rhs(0.0, 0.0, U, params(1, -1, -2, 2, 0.01), space.frame), -1.0, 1e-14);
}

TEST(OdeRhs, HelicoidIsFixedPoint) {
  const auto space = make_space(kHelicoidal);
  const auto U = gen("sqrt(s^2+1)", 0.5, 2);
  for (double s = 0.5; s <= 2.0; s += 0.05)
    for (double theta : {-1.0, 0.0, 0.7}) EXPECT_EQ(ode_rhs(s, theta, U, params(1, 1, 0.5, 2, 0.01), space.frame), 0.0);
}

TEST(OdeRhs, CriticalPointOfU) {
  // U'(0) = 0: theta' = eps |grad theta|.
  const auto space = make_space(kBcv111);
  const auto U = gen("sqrt(s^2+4)", 0, 1);
  const double w = U(0.0);
  for (int eps : {1, -1}) {
    const double rhs = ode_rhs(0.0, 0.3, U, params(1, eps, 0, 1, 0.01), space.frame);
    EXPECT_NEAR(rhs, eps * std::sqrt(space.frame.grad_theta_sq(w, 0.3)), 1e-13);
  }
}

TEST(OdeRhs, NegativeRadicandReportsS) {
  const auto space = make_space(kHelicoidal);
  const auto U = gen("sqrt(s^2+2)", 0.5, 2);
  try {
    ode_rhs(1.5, 0.0, U, params(2, 1, 0.5, 2, 0.01), space.frame);
    FAIL();
  } catch (const RadicandNegativeError& e) {
    EXPECT_EQ(e.s(), 1.5);
    EXPECT_LT(e.radicand(), 0.0);
  }
}

TEST(OdeRhs, RectExit) {
  auto space = make_space(kHelicoidal);
  space.frame.rect.theta_max = 0.5;
  const auto U = gen("sqrt(s^2+2)", 0.5, 2);
  EXPECT_THROW(ode_rhs(1.0, 0.6, U, params(1, 1, 0.5, 2, 0.01), space.frame), RectExitError);
}

TEST(Integrate, CatenoidArcsinh) {
  EXPECT_LT(catenoid_error(0.01), 1e-6);
}

TEST(Integrate, Rk4FourthOrder) {
  const double ratio = catenoid_error(0.1) / catenoid_error(0.05);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(Integrate, EulerFirstOrder) {
  const auto space = make_space(kRotational);
  const auto U = gen("sqrt(s^2+1)", -2, 2);
  auto err = [&](double h) {
    const auto prof = integrate_profile(U, params(1, 1, -2, 2, h, Integrator::euler), space.frame, std::asinh(-2.0));
    double e = 0.0;
    for (const auto& p : prof.samples) e = std::max(e, std::abs(p.theta - std::asinh(p.s)));
    return e;
  };
  const double ratio = err(0.02) / err(0.01);
  EXPECT_GT(ratio, 1.8);
  EXPECT_LT(ratio, 2.2);
}

TEST(Integrate, HelicoidRay) {
  const auto space = make_space(kHelicoidal);
  const auto U = gen("sqrt(s^2+1)", 0.5, 2);
  const double theta0 = 0.4;
  const auto prof = integrate_profile(U, params(1, 1, 0.5, 2, 0.01), space.frame, theta0);
  for (const auto& p : prof.samples) {
    EXPECT_EQ(p.theta, theta0);
    EXPECT_NEAR(std::hypot(p.x1, p.x2), p.s, 1e-14);
    EXPECT_NEAR(p.x2 / p.x1, theta0, 1e-14);
    EXPECT_NEAR(p.omega, std::sqrt(p.s * p.s + 1), 1e-15);
  }
}

TEST(Integrate, OmegaConstraintAndUnitSpeed) {
  for (const SpaceSpec& spec : {kHelicoidal, kBcv111}) {
    const auto space = make_space(spec);
    const bool bcv = spec.kind == SpaceKind::bcv_helicoidal;
    const auto U = bcv ? gen("sqrt(s^2+4)", 0, 1) : gen("sqrt(s^2+2)", 0.5, 2);
    const auto p = bcv ? params(1, 1, 0, 1, 0.005) : params(1, 1, 0.5, 2, 0.005);
    const auto prof = integrate_profile(U, p, space.frame, bcv ? -2.0 : 0.0);
    const auto q = quotient_metric(space.chart);
    const auto& s = prof.samples;
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_NEAR(volume_at(space.chart, {s[k].x1, s[k].x2}), p.m * U(s[k].s), 1e-8);
      if (k == 0 || k + 1 == s.size()) continue;
      const double h = s[k + 1].s - s[k - 1].s;
      const Point2 d{(s[k + 1].x1 - s[k - 1].x1) / h, (s[k + 1].x2 - s[k - 1].x2) / h};
      EXPECT_NEAR(quadratic(q.at({s[k].x1, s[k].x2}), d, d), 1.0, 5e-4);
      // exact node slopes are unit speed to rounding
      const Point2 e{s[k].dx1, s[k].dx2};
      EXPECT_NEAR(quadratic(q.at({s[k].x1, s[k].x2}), e, e), 1.0, 1e-10);
    }
  }
}

TEST(Integrate, BranchSymmetry) {
  // eps -> -eps together with theta0 -> -theta0 mirrors the profile in x2.
  for (const SpaceSpec& spec : {kRotational, kHelicoidal, kBcv111}) {
    const auto space = make_space(spec);
    const bool bcv = spec.kind == SpaceKind::bcv_helicoidal;
    const auto U = bcv ? gen("sqrt(s^2+4)", 0, 1) : gen("sqrt(s^2+2)", 0, 0.7);
    const double hi = bcv ? 1.0 : 0.7, theta0 = bcv ? -2.0 : 0.0;
    const auto pp = integrate_profile(U, params(1, 1, 0, hi, 0.005), space.frame, theta0);
    const auto pm = integrate_profile(U, params(1, -1, 0, hi, 0.005), space.frame, -theta0);
    for (std::size_t k = 0; k < pp.samples.size(); ++k) {
      EXPECT_NEAR(pp.samples[k].theta, -pm.samples[k].theta, 1e-9);
      EXPECT_NEAR(pp.samples[k].x1, pm.samples[k].x1, 1e-9);
      EXPECT_NEAR(pp.samples[k].x2, -pm.samples[k].x2, 1e-9);
    }
  }
}

TEST(Integrate, BlowUpOfThetaIsRejected) {
  // From theta0 = -2 the eps = -1 branch turns past the x1 = 0 line where
  // theta = x2/x1 is infinite.
  const auto space = make_space(kBcv111);
  const auto U = gen("sqrt(s^2+4)", 0, 1);
  EXPECT_THROW(integrate_profile(U, params(1, -1, 0, 1, 0.005), space.frame, -2.0), Error);
}

TEST(Integrate, StepTooLargeWhenStageLeavesRect) {
  auto space = make_space(kRotational);
  space.frame.rect.theta_max = 0.105;  // node at s=0.1 is inside, stages beyond are not
  const auto U = gen("sqrt(s^2+1)", 0, 1);
  EXPECT_THROW(integrate_profile(U, params(1, 1, 0, 1, 0.1), space.frame, 0.0), StepTooLargeError);
}

TEST(Integrate, RadicandErrorCarriesFirstFailingS) {
  const auto space = make_space(kHelicoidal);
  const auto U = gen("sqrt(s^2+2)", 0.5, 2);
  try {
    integrate_profile(U, params(2, 1, 0.5, 2, 0.005), space.frame, 0.0);
    FAIL();
  } catch (const RadicandNegativeError& e) {
    // 7 - 12 s^2 < 0 first after s = sqrt(7/12)
    EXPECT_GT(e.s(), std::sqrt(7.0 / 12.0));
    EXPECT_LT(e.s(), std::sqrt(7.0 / 12.0) + 0.005 + 1e-12);
  }
}

TEST(Params, Validation) {
  EXPECT_THROW(params(0, 1, 0, 1, 0.01).validate(), ConfigError);
  EXPECT_THROW(params(1, 0, 0, 1, 0.01).validate(), ConfigError);
  EXPECT_THROW(params(1, 1, 1, 0, 0.01).validate(), ConfigError);
  EXPECT_THROW(params(1, 1, 0, 1, 0.2).validate(), ConfigError);
  EXPECT_NO_THROW(params(1, 1, 0, 1, 0.1).validate());
  EXPECT_EQ(params(1, 1, 0, 1, 0.003).grid().size(), 335u);  // ceil(333.3) intervals
}

TEST(Vertical, HelicoidAndCatenoidHaveZeroV) {
  {
    const auto space = make_space(kHelicoidal);
    const auto U = gen("sqrt(s^2+1)", 0.5, 2);
    const auto p = params(1, 1, 0.5, 2, 0.01);
    const auto v = vertical_quadrature(integrate_profile(U, p, space.frame, 0.0), space.chart, p, U);
    for (double x : v.V) EXPECT_EQ(x, 0.0);
  }
  {
    const auto space = make_space(kRotational);
    const auto U = gen("sqrt(s^2+1)", -2, 2);
    const auto p = params(1, 1, -2, 2, 0.01);
    const auto v = vertical_quadrature(integrate_profile(U, p, space.frame, 0.0), space.chart, p, U);
    for (double x : v.V) EXPECT_EQ(x, 0.0);
  }
}

TEST(Vertical, MatchesDirectQuadratureOfTheOrbitComponent) {
  // Independent oracle: integrate -g(X, gamma') / (m^2 U^2) with a fine
  // trapezoid rule on the member's own Hermite profile.
  const auto space = make_space(kBcv111);
  const auto U = gen("sqrt(s^2+4)", 0, 1);
  const auto member = generate_member(U, params(1, 1, 0, 1, 0.005), space.frame, -2.0);
  const int n = 20000;
  double acc = 0.0;
  auto integrand = [&](double s) {
    const double h = 1e-6;
    const Point2 a = member.profile_at(s + h), b = member.profile_at(s - h), x = member.profile_at(s);
    const Mat3 g = metric_at(space.chart, x);
    const double u = U(s);
    return -(((a[0] - b[0]) / (2 * h)) * g[0][2] + ((a[1] - b[1]) / (2 * h)) * g[1][2]) / (u * u);
  };
  double prev = integrand(1e-6);
  for (int i = 1; i <= n; ++i) {
    const double s = 1e-6 + (1.0 - 2e-6) * i / n;
    const double cur = integrand(s);
    acc += 0.5 * (prev + cur) * (1.0 - 2e-6) / n;
    prev = cur;
  }
  EXPECT_NEAR(member.vertical_at(1.0 - 1e-6) - member.vertical_at(1e-6), acc, 1e-7);
}

TEST(Member, MapIsAffineInT) {
  const auto space = make_space(kBcv111);
  const auto U = gen("sqrt(s^2+4)", 0, 1);
  const double m = 1.0;
  const auto member = generate_member(U, params(m, 1, 0, 1, 0.01), space.frame, -2.0);
  for (double s = 0.05; s < 1.0; s += 0.1) {
    const Point3 a = member.map(s, 0.0), b = member.map(s, 2.0);
    EXPECT_EQ(a[0], b[0]);
    EXPECT_EQ(a[1], b[1]);
    EXPECT_NEAR(b[2] - a[2], 2.0 / m, 1e-14);
  }
  EXPECT_EQ(member.metadata().chart_label, space.chart.label);
  EXPECT_EQ(member.metadata().epsilon, 1);
}

TEST(Member, HelicoidAndCatenoidMaps) {
  {
    const auto space = make_space(kHelicoidal);
    const auto U = gen("sqrt(s^2+1)", 0.5, 2);
    const auto m = generate_member(U, params(1, 1, 0.5, 2, 0.01), space.frame, 0.0);
    const Point3 p = m.map(1.234, 0.7);
    EXPECT_NEAR(p[0], 1.234, 1e-12);
    EXPECT_NEAR(p[1], 0.0, 1e-15);
    EXPECT_NEAR(p[2], 0.7, 1e-15);
  }
  {
    const auto space = make_space(kRotational);
    const auto U = gen("sqrt(s^2+1)", -2, 2);
    const auto m = generate_member(U, params(1, 1, -2, 2, 0.01), space.frame, std::asinh(-2.0));
    for (double s = -1.9; s < 2; s += 0.3) {
      const Point3 p = m.map(s, 0.5);
      EXPECT_NEAR(p[0], std::sqrt(s * s + 1), 1e-9);
      EXPECT_NEAR(p[1], std::asinh(s), 1e-8);
      EXPECT_NEAR(p[2], 0.5, 1e-15);
    }
  }
}

TEST(Member, AssembleRejectsMismatchedGrids) {
  const auto space = make_space(kRotational);
  const auto U = gen("sqrt(s^2+1)", -2, 2);
  const auto p = params(1, 1, -2, 2, 0.01);
  const auto prof = integrate_profile(U, p, space.frame, 0.0);
  auto v = vertical_quadrature(prof, space.chart, p, U);
  v.V.pop_back();
  EXPECT_THROW(assemble_member(prof, v, p, U), GridMismatchError);
  v = vertical_quadrature(prof, space.chart, p, U);
  v.s[3] += 1e-3;
  EXPECT_THROW(assemble_member(prof, v, p, U), GridMismatchError);
}

TEST(Member, OriginalProfileReproducedAtMEqualsOne) {
  // U = omega along the catenoid profile, m = 1, gives back that profile.
  const auto space = make_space(kRotational);
  const auto U = gen("sqrt(s^2+1)", -2, 2);
  const auto original = generate_member(U, params(1, 1, -2, 2, 0.01), space.frame, 0.0);
  std::vector<double> s, w;
  for (const auto& p : original.samples()) {
    s.push_back(p.s);
    w.push_back(p.omega);
  }
  const auto table = GeneratrixMetric::from_table(s, w);
  const auto again = generate_member(table, params(1, 1, -2, 2, 0.01), space.frame, 0.0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    EXPECT_NEAR(again.samples()[k].x1, original.samples()[k].x1, 1e-6);
    EXPECT_NEAR(again.samples()[k].x2, original.samples()[k].x2, 1e-6);
  }
}

namespace {

AdaptedChart3 flat_chart(double scale) {
  AdaptedChart3 c;
  c.g11 = c.g22 = [](double, double) { return 1.0; };
  c.g33 = [scale](double, double) { return scale * scale; };
  c.g12 = c.g13 = c.g23 = [](double, double) { return 0.0; };
  c.label = "flat";
  return c;
}

LiftedCurve unit_circle_arc() {
  std::vector<CurveSample> s;
  for (const double u : linspace(0.0, 2.0, 201)) s.push_back({u, std::cos(u), std::sin(u), 0.0});
  return LiftedCurve(s);
}

}  // namespace

TEST(ConstantVolume, FlatCylinder) {
  const auto member = constant_volume_member(flat_chart(1.0), unit_circle_arc());
  for (const auto& p : member.samples()) {
    EXPECT_EQ(p.V, 0.0);
    EXPECT_EQ(p.U, 1.0);
  }
  EXPECT_EQ(member.m(), 1.0);
}

TEST(ConstantVolume, TwistedConstantVolumeChart) {
  // g13 = c x2, g23 = -c x1 with g33 = 1 + c^2 r^2 would not be constant;
  // instead take g13 = 0.3 constant and g33 = 1 so omega = 1.
  AdaptedChart3 c = flat_chart(1.0);
  c.g13 = [](double, double) { return 0.3; };
  const auto member = constant_volume_member(c, unit_circle_arc());
  for (const auto& p : member.samples()) EXPECT_NEAR(p.V, -0.3 * (std::cos(p.s) - 1.0), 1e-8);
}

TEST(ConstantVolume, RejectsNonConstantAndRescales) {
  EXPECT_THROW(constant_volume_member(make_chart(kHelicoidal), unit_circle_arc()), NonConstantVolumeError);
  const auto scaled = flat_chart(2.0);
  EXPECT_THROW(constant_volume_member(scaled, unit_circle_arc()), NonConstantVolumeError);
  EXPECT_NO_THROW(constant_volume_member(rescale_killing(scaled, 2.0), unit_circle_arc()));
  EXPECT_NEAR(volume_at(rescale_killing(make_chart(kHelicoidal), 2.0), {1, 0}), std::sqrt(2.0) / 2.0, 1e-15);
}
