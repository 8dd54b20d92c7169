// Serial reference vs OpenMP kernels: isometry grid and characteristic tracing.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <omp.h>

#include "bourgen/bour.hpp"
#include "bourgen/expression.hpp"
#include "bourgen/quotient.hpp"
#include "bourgen/spaces.hpp"
#include "bourgen/verify.hpp"

using namespace bourgen;

template <class F>
double seconds(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());

  const SpaceSpec spec{SpaceKind::bcv_helicoidal, 1.0, 1.0, 1.0};
  const BuiltinSpace space = make_space(spec);
  const auto U = GeneratrixMetric::from_expression(Expression::parse("sqrt(s^2+4)"), 0.0, 1.0);
  const SurfaceMember member = generate_member(U, {1.0, 1, 0.0, 1.0, 0.005, Integrator::rk4}, space.frame, -2.0);
  const IsometryGrid grid = IsometryGrid::covering(member, 81, 81, 0.0, 1.0, 1e-5);

  double e_serial = 0, e_par = 0;
  const double ts = seconds([&] { e_serial = isometry_report_serial(space.chart, member, U, grid, 1e-5).max_e; }, reps);
  const double tp = seconds([&] { e_par = isometry_report(space.chart, member, U, grid, 1e-5).max_e; }, reps);
  std::printf("isometry_report 81x81     serial %.4fs  openmp %.4fs  speedup %.2f  same=%d\n", ts, tp, ts / tp,
              e_serial == e_par);

  const AdaptedChart3 chart = make_chart({SpaceKind::euclidean_helicoidal, 1.0, 0.0, 0.0});
  const auto cauchy = [](double sigma) { return Point2{2.0 * std::cos(sigma / 2.0), 2.0 * std::sin(sigma / 2.0)}; };
  const auto sigmas = linspace(-0.8, 0.8, 161);
  CharacteristicOptions opts;
  opts.omega_min = 1.2;
  opts.omega_max = 3.0;
  double x_serial = 0, x_par = 0;
  const double cs = seconds([&] { x_serial = trace_characteristics_serial(chart, cauchy, sigmas, opts)[80].x1(2.5); }, reps);
  const double cp = seconds([&] { x_par = trace_characteristics(chart, cauchy, sigmas, opts)[80].x1(2.5); }, reps);
  std::printf("trace_characteristics 161 serial %.4fs  openmp %.4fs  speedup %.2f  same=%d\n", cs, cp, cs / cp,
              x_serial == x_par);
  return 0;
}
