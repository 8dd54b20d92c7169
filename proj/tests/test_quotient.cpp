#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bourgen/errors.hpp"
#include "bourgen/quotient.hpp"
#include "bourgen/spaces.hpp"

using namespace bourgen;

namespace {

const SpaceSpec kHelicoidal{SpaceKind::euclidean_helicoidal, 1.0, 0.0, 0.0};
const SpaceSpec kBcv111{SpaceKind::bcv_helicoidal, 1.0, 1.0, 1.0};

InvariantFunction slope() {
  InvariantFunction t;
  t.value = [](double x1, double x2) { return x2 / x1; };
  return t;
}

// Circle of radius 2 about the axis, parametrized by arc length.
Point2 circle(double sigma) { return {2.0 * std::cos(sigma / 2.0), 2.0 * std::sin(sigma / 2.0)}; }

}  // namespace

TEST(QuotientMetric, HelicoidalExample) {
  const auto q = quotient_metric(make_chart(kHelicoidal));
  const Mat2 m = q.at({1, 0});
  EXPECT_NEAR(m[0][0], 1.0, 1e-15);
  EXPECT_NEAR(m[0][1], 0.0, 1e-15);
  EXPECT_NEAR(m[1][1], 0.5, 1e-15);
  const Mat2 inv = inverse(Mat2{{{1, 0}, {0, 2}}});
  EXPECT_NEAR(m[1][1], inv[1][1], 1e-15);
  const Mat2 axis = q.at({0, 0});
  EXPECT_NEAR(axis[0][0], 1.0, 1e-15);
  EXPECT_NEAR(axis[1][1], 1.0, 1e-15);
}

TEST(QuotientMetric, InverseOfBlockAndExplicitFormulaOnRandomPoints) {
  const double a = 1.0;
  const auto c = make_chart(kHelicoidal);
  const auto q = quotient_metric(c);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Point2 p{d(rng), d(rng)};
    const Mat2 m = q.at(p);
    const Mat2 inv = inverse(inverse_metric_block(c, p));
    const double w2 = p[0] * p[0] + p[1] * p[1] + a * a;
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) EXPECT_NEAR(m[r][s], inv[r][s], 1e-10);
    EXPECT_NEAR(m[0][0], (p[0] * p[0] + a * a) / w2, 1e-12);
    EXPECT_NEAR(m[0][1], p[0] * p[1] / w2, 1e-12);
    EXPECT_NEAR(m[1][1], (p[1] * p[1] + a * a) / w2, 1e-12);
    EXPECT_GT(m[0][0], 0.0);
    EXPECT_GT(det(m), 0.0);
  }
}

TEST(Frame, HelicoidalExamples) {
  const auto space = make_space(kHelicoidal);
  const Point2 x = space.frame.invert(std::sqrt(2.0), 0.0);
  EXPECT_NEAR(x[0], 1.0, 1e-15);
  EXPECT_NEAR(x[1], 0.0, 1e-15);
  EXPECT_NEAR(space.frame.grad_omega_sq(std::sqrt(2.0), 0.0), 0.5, 1e-14);
  EXPECT_NEAR(space.frame.grad_theta_sq(std::sqrt(2.0), 0.0), 2.0, 1e-14);
}

TEST(Frame, BcvRadiusRelation) {
  const auto space = make_space(kBcv111);
  for (double w = 1.05; w < 2.5; w += 0.1)
    for (double t = -1.5; t < 1.5; t += 0.3) {
      const Point2 x = space.frame.invert(w, t);
      const double delta = 1.0 + 3.0 * (w * w - 1.0);  // (1 - 2 a tau)^2 + (4 tau^2 - kappa)(w^2 - a^2)
      const double r2 = 4.0 * (w * w - 1.0) / ((1.0 + std::sqrt(delta)) * (1.0 + std::sqrt(delta)) - 4.0 * w * w);
      EXPECT_NEAR(x[0] * x[0] + x[1] * x[1], r2, 1e-10 * std::max(1.0, r2));
    }
}

TEST(Frame, FrameInvariantsOnBuiltins) {
  std::mt19937_64 rng(17);
  for (const SpaceSpec& spec : {kHelicoidal, kBcv111, SpaceSpec{SpaceKind::euclidean_rotational, 0, 0, 0}}) {
    const auto space = make_space(spec);
    const auto& f = space.frame;
    std::uniform_real_distribution<double> dw(std::abs(spec.a) + 0.05, 2.5), dt(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      const double w = dw(rng), t = dt(rng);
      const Point2 x = f.invert(w, t);
      EXPECT_NEAR(f.omega(x), w, 1e-10) << to_string(spec.kind);
      EXPECT_NEAR(f.theta(x), t, 1e-10);
      EXPECT_GT(f.grad_omega_sq(w, t), 0.0);
      EXPECT_GT(f.grad_theta_sq(w, t), 0.0);
      EXPECT_LT(std::abs(invariant_pairing(f.chart, f.omega, f.theta, x)), 1e-8);
    }
  }
}

TEST(Newton, ConvergesQuadraticallyAndMatchesAnalyticInverse) {
  const auto space = make_space(kBcv111);
  const auto& f = space.frame;
  std::vector<double> hist;
  const Point2 x = newton_invert(f.chart, f.omega, f.theta, {0.6, 0.1}, {1.3, 0.4}, {}, &hist);
  const Point2 ref = f.invert(1.3, 0.4);
  EXPECT_NEAR(x[0], ref[0], 1e-11);
  EXPECT_NEAR(x[1], ref[1], 1e-11);
  ASSERT_GE(hist.size(), 3u);
  // Once in the asymptotic regime r_{k+1} <= C r_k^2.
  int quadratic_steps = 0;
  for (std::size_t k = 1; k + 1 < hist.size(); ++k)
    if (hist[k] < 1e-2 && hist[k + 1] > 1e-14) {
      EXPECT_LE(hist[k + 1], 50.0 * hist[k] * hist[k]);
      ++quadratic_steps;
    }
  EXPECT_GE(quadratic_steps, 1);
}

TEST(Newton, BadSeedDiverges) {
  const auto space = make_space(kHelicoidal);
  const auto& f = space.frame;
  NewtonOptions opts;
  opts.max_iterations = 2;
  EXPECT_THROW(newton_invert(f.chart, f.omega, f.theta, {0.05, 3.0}, {5.0, -3.0}, opts), NewtonDivergenceError);
}

TEST(Frame, BuiltFrameAgreesWithAnalyticInverse) {
  const auto space = make_space(kBcv111);
  const OmegaThetaRect rect{1.05, 2.0, -1.5, 1.5};
  const QuotientFrame built = build_frame(space.chart, space.theta, rect, {0.1, 2.5, -2.5, 2.5});
  for (double w = 1.1; w < 2.0; w += 0.15)
    for (double t = -1.4; t < 1.5; t += 0.35) {
      const Point2 a = built.invert(w, t), b = space.frame.invert(w, t);
      EXPECT_NEAR(a[0], b[0], 1e-10);
      EXPECT_NEAR(a[1], b[1], 1e-10);
      EXPECT_NEAR(built.grad_theta_sq(w, t), space.frame.grad_theta_sq(w, t), 1e-8);
    }
  const auto dump = frame_grid_dump(built, 5);
  EXPECT_EQ(dump["grid"].size(), 25u);
}

TEST(Frame, RankDeficientPairRejected) {
  const auto chart = make_chart(kHelicoidal);
  InvariantFunction bad;  // a function of omega only: Jacobian rank 1
  bad.value = [](double x1, double x2) { return x1 * x1 + x2 * x2; };
  EXPECT_THROW(build_frame(chart, bad, {1.1, 2.0, 0.0, 5.0}, {0.5, 1.5, 0.5, 1.5}), RankDeficiencyError);
}

TEST(Characteristics, TracedThetaIsOrthogonalAndParallelToSlope) {
  const auto chart = make_chart(kHelicoidal);
  CharacteristicOptions opts;
  opts.omega_min = 1.2;
  opts.omega_max = 2.9;
  const auto sigma = linspace(-1.2, 1.2, 81);
  const auto theta = solve_orthogonal_invariant(chart, circle, sigma, opts);
  const auto omega = volume_function(chart);
  const auto ref = slope();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dr(0.8, 2.6), da(-0.45, 0.45);
  for (int i = 0; i < 100; ++i) {
    const double r = dr(rng), ang = da(rng);
    const Point2 p{r * std::cos(ang), r * std::sin(ang)};
    EXPECT_LT(std::abs(invariant_pairing(chart, omega, theta, p)), 1e-6);
    const Point2 g = coordinate_gradient(chart, theta, p), h = coordinate_gradient(chart, ref, p);
    EXPECT_LT(std::abs(g[0] * h[1] - g[1] * h[0]), 1e-5);
  }
  // On the Cauchy curve theta is the arc-length parameter.
  EXPECT_NEAR(theta(circle(0.37)), 0.37, 1e-9);
}

TEST(Characteristics, RadialCauchyCurveIsTangent) {
  const auto chart = make_chart(kHelicoidal);
  CharacteristicOptions opts;
  opts.omega_min = 1.1;
  opts.omega_max = 2.2;
  const auto ray = [](double sigma) { return Point2{sigma, 0.0}; };
  const auto sigma = linspace(0.5, 2.0, 16);
  EXPECT_THROW(trace_characteristics(chart, ray, sigma, opts), TransversalityError);
}

TEST(Characteristics, CauchyCurveOutsideOmegaRange) {
  const auto chart = make_chart(kBcv111);
  CharacteristicOptions opts;
  opts.omega_min = 1.05;
  opts.omega_max = 1.6;
  const auto inner = [](double s) { return Point2{0.7 * std::cos(s / 0.7), 0.7 * std::sin(s / 0.7)}; };
  EXPECT_THROW(trace_characteristics(chart, inner, linspace(-0.5, 0.5, 9), opts), DomainError);
}

TEST(Characteristics, DegenerateGradientOnAxis) {
  const auto chart = make_chart(kHelicoidal);
  EXPECT_THROW(characteristic_direction(chart, volume_function(chart), {0.0, 0.0}), DegenerateGradientError);
}

TEST(Characteristics, ParallelMatchesSerial) {
  const auto chart = make_chart(kBcv111);
  CharacteristicOptions opts;
  opts.omega_min = 1.05;
  opts.omega_max = 1.6;
  const auto sigma = linspace(-0.5, 0.5, 33);
  // omega is not monotone in r here (minimum near r = 0.9); r = 1.6 is on the outer branch
  const auto cauchy = [](double s) { return Point2{1.6 * std::cos(s / 1.6), 1.6 * std::sin(s / 1.6)}; };
  const auto a = trace_characteristics(chart, cauchy, sigma, opts);
  const auto b = trace_characteristics_serial(chart, cauchy, sigma, opts);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x1.values(), b[i].x1.values());
    EXPECT_EQ(a[i].x2.values(), b[i].x2.values());
  }
}

TEST(Characteristics, CharacteristicsAreGradientLinesOfOmega) {
  // In the Euclidean helicoidal chart the gradient lines of omega are rays,
  // so x2/x1 is constant along every characteristic.
  const auto chart = make_chart(kHelicoidal);
  CharacteristicOptions opts;
  opts.omega_min = 1.2;
  opts.omega_max = 2.9;
  const auto sigma = linspace(-1.0, 1.0, 9);
  for (const auto& c : trace_characteristics(chart, circle, sigma, opts)) {
    const double t0 = c.x2.values().front() / c.x1.values().front();
    for (std::size_t k = 0; k < c.x1.values().size(); ++k)
      EXPECT_NEAR(c.x2.values()[k] / c.x1.values()[k], t0, 1e-10);
  }
}
