#include <gtest/gtest.h>

#include <cmath>

#include "bourgen/bour.hpp"
#include "bourgen/errors.hpp"
#include "bourgen/expression.hpp"
#include "bourgen/spaces.hpp"
#include "bourgen/verify.hpp"

using namespace bourgen;

namespace {

const SpaceSpec kHelicoidal{SpaceKind::euclidean_helicoidal, 1.0, 0.0, 0.0};
const SpaceSpec kRotational{SpaceKind::euclidean_rotational, 0.0, 0.0, 0.0};
const SpaceSpec kBcv111{SpaceKind::bcv_helicoidal, 1.0, 1.0, 1.0};

GeneratrixMetric gen(const char* text, double lo, double hi) {
  return GeneratrixMetric::from_expression(Expression::parse(text), lo, hi);
}

SurfaceMember helicoid() {
  const auto space = make_space(kHelicoidal);
  return generate_member(gen("sqrt(s^2+1)", 0.5, 2), {1, 1, 0.5, 2, 0.01, Integrator::rk4}, space.frame, 0.0);
}

SurfaceMember catenoid(double step, int eps = 1) {
  const auto space = make_space(kRotational);
  return generate_member(gen("sqrt(s^2+1)", -2, 2), {1, eps, -2, 2, step, Integrator::rk4}, space.frame, 0.0);
}

SurfaceMember bcv_member(int eps) {
  const auto space = make_space(kBcv111);
  return generate_member(gen("sqrt(s^2+4)", 0, 1), {1, eps, 0, 1, 0.005, Integrator::rk4}, space.frame,
                         eps > 0 ? -2.0 : 2.0);
}

}  // namespace

TEST(FirstForm, HelicoidExample) {
  const auto f = fd_first_form(make_chart(kHelicoidal), helicoid(), 1.0, 0.3, 1e-5);
  EXPECT_NEAR(f.E, 1.0, 1e-8);
  EXPECT_NEAR(f.F, 0.0, 1e-8);
  EXPECT_NEAR(f.G, 2.0, 1e-8);
}

TEST(FirstForm, CatenoidG) {
  const auto m = catenoid(0.01);
  for (double s = -1.5; s <= 1.5; s += 0.5) EXPECT_NEAR(fd_first_form(make_chart(kRotational), m, s, 0.2, 1e-5).G, s * s + 1, 1e-7);
}

TEST(FirstForm, OutOfRange) {
  const auto m = helicoid();
  EXPECT_THROW(fd_first_form(make_chart(kHelicoidal), m, 0.5, 0.0, 1e-3), RangeError);
  EXPECT_THROW(fd_first_form(make_chart(kHelicoidal), m, 2.0, 0.0, 1e-3), RangeError);
}

TEST(FirstForm, CentralDifferencesAreSecondOrder) {
  // Member nodes every 0.01; with h = 0.04 and 0.02 the stencils land on nodes
  // so only the difference quotient error remains.
  const auto chart = make_chart(kRotational);
  const auto m = catenoid(0.01);
  const double s = 0.5;
  auto err = [&](double h) { return std::abs(fd_first_form(chart, m, s, 0.0, h).E - 1.0); };
  const double ratio = err(0.04) / err(0.02);
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
}

TEST(Isometry, DemoMembersPass) {
  const auto hm = helicoid();
  const auto hr = isometry_report(make_chart(kHelicoidal), hm, gen("sqrt(s^2+1)", 0.5, 2),
                                  IsometryGrid::covering(hm, 21, 21, 0, 1, 1e-5), 1e-6);
  EXPECT_TRUE(hr.pass);
  EXPECT_EQ(hr.samples, 441u);
  const auto bm = bcv_member(1);
  const auto br = isometry_report(make_chart(kBcv111), bm, gen("sqrt(s^2+4)", 0, 1),
                                  IsometryGrid::covering(bm, 21, 21, 0, 1, 1e-5), 1e-6);
  EXPECT_TRUE(br.pass) << br.to_json().dump();
}

TEST(Isometry, CorruptedVerticalFails) {
  const auto good = helicoid();
  auto samples = good.samples();
  for (auto& p : samples) {
    p.V += 0.01 * p.s;
    p.dV += 0.01;
  }
  const SurfaceMember bad(samples, good.metadata());
  const auto r = isometry_report(make_chart(kHelicoidal), bad, gen("sqrt(s^2+1)", 0.5, 2),
                                 IsometryGrid::covering(bad, 11, 5, 0, 1, 1e-5), 1e-5);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(std::max(r.max_e, r.max_f), 1e-5);
  EXPECT_FALSE(r.worst_quantity.empty());
  EXPECT_GE(r.worst_s, bad.s_min());
  EXPECT_LE(r.worst_s, bad.s_max());
}

TEST(Isometry, SinglePointGrid) {
  const auto m = helicoid();
  IsometryGrid g{1.0, 1.0, 1, 0.5, 0.5, 1, 1e-5};
  ASSERT_EQ(g.s_nodes().size(), 1u);
  EXPECT_EQ(g.s_nodes()[0], 1.0);
  const auto r = isometry_report(make_chart(kHelicoidal), m, gen("sqrt(s^2+1)", 0.5, 2), g, 1e-6);
  EXPECT_EQ(r.samples, 1u);
  EXPECT_TRUE(r.pass);
}

TEST(Isometry, GridCoveringInsetsByH) {
  const auto m = helicoid();
  const auto g = IsometryGrid::covering(m, 5, 3, 0, 2, 1e-3);
  EXPECT_NEAR(g.s_nodes().front(), 0.5 + 1e-3, 1e-15);
  EXPECT_NEAR(g.s_nodes().back(), 2.0 - 1e-3, 1e-15);
  EXPECT_EQ(g.t_nodes().size(), 3u);
  EXPECT_EQ(g.t_nodes()[1], 1.0);
}

TEST(Isometry, BranchesHaveEqualErrors) {
  const auto chart = make_chart(kRotational);
  const auto U = gen("sqrt(s^2+1)", -2, 2);
  const auto a = catenoid(0.01, 1), b = catenoid(0.01, -1);
  const auto ra = isometry_report(chart, a, U, IsometryGrid::covering(a, 21, 5, 0, 1, 1e-5), 1e-6);
  const auto rb = isometry_report(chart, b, U, IsometryGrid::covering(b, 21, 5, 0, 1, 1e-5), 1e-6);
  EXPECT_NEAR(ra.max_e, rb.max_e, 1e-12);
  EXPECT_NEAR(ra.max_f, rb.max_f, 1e-12);
  EXPECT_NEAR(ra.max_g, rb.max_g, 1e-12);
}

TEST(Isometry, ParallelMatchesSerialBitwise) {
  const auto m = bcv_member(1);
  const auto chart = make_chart(kBcv111);
  const auto U = gen("sqrt(s^2+4)", 0, 1);
  const auto g = IsometryGrid::covering(m, 31, 17, -1, 1, 1e-5);
  const auto p = isometry_report(chart, m, U, g, 1e-6);
  const auto s = isometry_report_serial(chart, m, U, g, 1e-6);
  EXPECT_EQ(p.max_e, s.max_e);
  EXPECT_EQ(p.max_f, s.max_f);
  EXPECT_EQ(p.max_g, s.max_g);
  EXPECT_EQ(p.worst_s, s.worst_s);
  EXPECT_EQ(p.worst_t, s.worst_t);
  EXPECT_EQ(p.to_json().dump(), s.to_json().dump());
}

TEST(CrossCheck, GenericAgreesWithClosedForm) {
  {
    const auto m = catenoid(0.01);
    std::vector<double> grid;
    for (const auto& p : m.samples()) grid.push_back(p.s);
    const auto c = closed_form(kRotational, gen("sqrt(s^2+1)", -2, 2), 1.0, 1, grid);
    const auto x = cross_check(c, m);
    EXPECT_TRUE(x.within(1e-6)) << x.to_json().dump();
    EXPECT_EQ(x.samples, grid.size());
  }
  for (int eps : {1, -1}) {
    const auto m = bcv_member(eps);
    std::vector<double> grid;
    for (const auto& p : m.samples()) grid.push_back(p.s);
    const auto c = closed_form(kBcv111, gen("sqrt(s^2+4)", 0, 1), 1.0, eps, grid);
    const auto x = cross_check(c, m);
    EXPECT_TRUE(x.within(1e-6)) << x.to_json().dump();
  }
}

TEST(CrossCheck, DetectsWrongBranch) {
  const auto m = bcv_member(1);
  std::vector<double> grid;
  for (const auto& p : m.samples()) grid.push_back(p.s);
  const auto c = closed_form(kBcv111, gen("sqrt(s^2+4)", 0, 1), 1.0, -1, grid);
  EXPECT_FALSE(cross_check(c, m).within(1e-6));
}

TEST(CrossCheck, GridMismatch) {
  const auto m = helicoid();
  const auto c = closed_form(kHelicoidal, gen("sqrt(s^2+1)", 0.5, 2), 1.0, 1, linspace(0.5, 2.0, 11));
  EXPECT_THROW(cross_check(c, m), GridMismatchError);
}
