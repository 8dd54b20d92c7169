#include "bourgen/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>

#include "bourgen/errors.hpp"

namespace bourgen {

FormSample fd_first_form(const AdaptedChart3& chart, const SurfaceMember& member, double s, double t, double h) {
  if (!(h > 0.0)) throw RangeError("fd_first_form: step must be positive");
  const double slack = 1e-12 * std::max(1.0, std::abs(s));
  if (s - h < member.s_min() - slack || s + h > member.s_max() + slack) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "fd_first_form: s=%.10g +- %.3g outside [%.10g, %.10g]", s, h, member.s_min(),
                  member.s_max());
    throw RangeError(buf);
  }
  const Point3 sp = member.map(s + h, t), sm = member.map(s - h, t);
  const Point3 tp = member.map(s, t + h), tm = member.map(s, t - h);
  Point3 ps{}, pt{};
  for (int i = 0; i < 3; ++i) {
    ps[i] = (sp[i] - sm[i]) / (2.0 * h);
    pt[i] = (tp[i] - tm[i]) / (2.0 * h);
  }
  const Point2 x = member.profile_at(s);
  const Mat3 g = metric_at(chart, x);
  double e = 0.0, f = 0.0, gg = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      e += ps[i] * g[i][j] * ps[j];
      f += ps[i] * g[i][j] * pt[j];
      gg += pt[i] * g[i][j] * pt[j];
    }
  return {s, t, e, f, gg};
}

IsometryGrid IsometryGrid::covering(const SurfaceMember& member, int s_count, int t_count, double t_min,
                                    double t_max, double h) {
  return {member.s_min() + h, member.s_max() - h, s_count, t_min, t_max, t_count, h};
}

namespace {

std::vector<double> nodes(double lo, double hi, int count) {
  if (count < 1) throw ConfigError("isometry grid: counts must be positive");
  if (count == 1) return {lo};
  return linspace(lo, hi, static_cast<std::size_t>(count));
}

}  // namespace

std::vector<double> IsometryGrid::s_nodes() const { return nodes(s_min, s_max, s_count); }
std::vector<double> IsometryGrid::t_nodes() const { return nodes(t_min, t_max, t_count); }

nlohmann::json IsometryGrid::to_json() const {
  return {{"s_range", {s_min, s_max}}, {"s_count", s_count}, {"t_range", {t_min, t_max}},
          {"t_count", t_count},        {"fd_step", h}};
}

nlohmann::json IsometryReport::to_json() const {
  return {{"grid", grid.to_json()},
          {"tolerance", tolerance},
          {"samples", samples},
          {"max_abs_E_minus_1", max_e},
          {"max_abs_F", max_f},
          {"max_abs_G_minus_U2", max_g},
          {"worst", {{"s", worst_s}, {"t", worst_t}, {"quantity", worst_quantity}}},
          {"pass", pass}};
}

namespace {

struct Deviation {
  double e, f, g;
  double s, t;
};

Deviation deviation(const AdaptedChart3& chart, const SurfaceMember& member, const GeneratrixMetric& U, double s,
                    double t, double h) {
  const FormSample f = fd_first_form(chart, member, s, t, h);
  const double u = U(s);
  return {std::abs(f.E - 1.0), std::abs(f.F), std::abs(f.G - u * u), s, t};
}

// Sequential reduction in grid order, so the serial and parallel kernels agree bit for bit.
IsometryReport reduce(const IsometryGrid& grid, double tol, const std::vector<Deviation>& devs) {
  IsometryReport r;
  r.grid = grid;
  r.tolerance = tol;
  r.samples = devs.size();
  double worst = -1.0;
  for (const Deviation& d : devs) {
    r.max_e = std::max(r.max_e, d.e);
    r.max_f = std::max(r.max_f, d.f);
    r.max_g = std::max(r.max_g, d.g);
    const double local = std::max({d.e, d.f, d.g});
    if (local > worst) {
      worst = local;
      r.worst_s = d.s;
      r.worst_t = d.t;
      r.worst_quantity = d.e >= d.f && d.e >= d.g ? "E" : (d.f >= d.g ? "F" : "G");
    }
  }
  r.pass = r.max_e <= tol && r.max_f <= tol && r.max_g <= tol;
  return r;
}

}  // namespace

IsometryReport isometry_report_serial(const AdaptedChart3& chart, const SurfaceMember& member,
                                      const GeneratrixMetric& U, const IsometryGrid& grid, double tol) {
  const auto ss = grid.s_nodes(), ts = grid.t_nodes();
  std::vector<Deviation> devs;
  devs.reserve(ss.size() * ts.size());
  for (const double s : ss)
    for (const double t : ts) devs.push_back(deviation(chart, member, U, s, t, grid.h));
  return reduce(grid, tol, devs);
}

IsometryReport isometry_report(const AdaptedChart3& chart, const SurfaceMember& member, const GeneratrixMetric& U,
                               const IsometryGrid& grid, double tol) {
  const auto ss = grid.s_nodes(), ts = grid.t_nodes();
  const long n = static_cast<long>(ss.size() * ts.size());
  const long nt = static_cast<long>(ts.size());
  std::vector<Deviation> devs(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      devs[i] = deviation(chart, member, U, ss[i / nt], ts[i % nt], grid.h);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return reduce(grid, tol, devs);
}

nlohmann::json CrossCheck::to_json() const {
  return {{"max_abs_rho", max_rho}, {"max_abs_angle", max_angle}, {"max_abs_V", max_v}, {"samples", samples}};
}

CrossCheck cross_check(const ClosedFormFamily& closed, const SurfaceMember& generic) {
  const auto& ms = generic.samples();
  if (ms.size() != closed.s.size()) throw GridMismatchError("cross_check: closed form and member grids differ in size");
  const SpaceSpec& spec = closed.space;
  const bool rotational = spec.kind == SpaceKind::euclidean_rotational;
  const double v_sign = spec.kind == SpaceKind::bcv_helicoidal ? -1.0 : 1.0;

  CrossCheck out;
  out.samples = ms.size();
  double phi_prev = 0.0, phi = 0.0, phi0 = 0.0, gauge = 0.0;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const MemberSample& p = ms[k];
    if (std::abs(p.s - closed.s[k]) > 1e-12 * std::max(1.0, std::abs(p.s)))
      throw GridMismatchError("cross_check: closed form and member use different s grids");
    double rho, angle;
    if (rotational) {
      rho = p.x1;
      angle = p.x2;
      phi = 0.0;
    } else {
      const double raw = std::atan2(p.x2, p.x1);
      if (k == 0) {
        phi = raw;
        phi0 = raw;
      } else {
        phi += std::remainder(raw - phi_prev, 2.0 * M_PI);
      }
      phi_prev = raw;
      rho = std::hypot(p.x1, p.x2);
      angle = spec.a * phi;
    }
    if (k == 0) gauge = closed.lambda[0] - angle;
    out.max_rho = std::max(out.max_rho, std::abs(rho - closed.rho[k]));
    out.max_angle = std::max(out.max_angle, std::abs(closed.lambda[k] - angle - gauge));
    const double v_generic = p.V - v_sign * (phi - phi0);
    out.max_v = std::max(out.max_v, std::abs(v_generic - closed.V[k]));
  }
  return out;
}

}  // namespace bourgen
