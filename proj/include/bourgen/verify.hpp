#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bourgen/chart.hpp"
#include "bourgen/generatrix.hpp"
#include "bourgen/member.hpp"
#include "bourgen/spaces.hpp"

namespace bourgen {

struct FormSample {
  double s, t, E, F, G;
};

// Central differences of the member map with step h; the metric is taken at psi(s, t).
FormSample fd_first_form(const AdaptedChart3& chart, const SurfaceMember& member, double s, double t, double h);

struct IsometryGrid {
  double s_min = 0.0, s_max = 1.0;
  int s_count = 21;
  double t_min = 0.0, t_max = 1.0;
  int t_count = 21;
  double h = 1e-5;  // finite-difference step

  // Whole member s-range with nodes inset by h.
  static IsometryGrid covering(const SurfaceMember& member, int s_count, int t_count, double t_min, double t_max,
                               double h);
  std::vector<double> s_nodes() const;
  std::vector<double> t_nodes() const;
  nlohmann::json to_json() const;
};

struct IsometryReport {
  IsometryGrid grid;
  double tolerance = 0.0;
  std::size_t samples = 0;
  double max_e = 0.0;  // max |E - 1|
  double max_f = 0.0;  // max |F|
  double max_g = 0.0;  // max |G - U^2|
  double worst_s = 0.0, worst_t = 0.0;
  std::string worst_quantity;
  bool pass = false;

  nlohmann::json to_json() const;
};

IsometryReport isometry_report(const AdaptedChart3& chart, const SurfaceMember& member, const GeneratrixMetric& U,
                               const IsometryGrid& grid, double tol);
IsometryReport isometry_report_serial(const AdaptedChart3& chart, const SurfaceMember& member,
                                      const GeneratrixMetric& U, const IsometryGrid& grid, double tol);

struct CrossCheck {
  double max_rho = 0.0;
  double max_angle = 0.0;  // after removing the additive gauge constant
  double max_v = 0.0;
  std::size_t samples = 0;

  bool within(double tol) const { return max_rho <= tol && max_angle <= tol && max_v <= tol; }
  nlohmann::json to_json() const;
};

// Generic angle: a * atan2(x2, x1) (unwrapped) for the helicoidal kinds,
// x2 for the rotational one. V differs from the closed form by
// +(phi - phi_0) in R^3 and -(phi - phi_0) in BCV, phi = atan2(x2, x1).
CrossCheck cross_check(const ClosedFormFamily& closed, const SurfaceMember& generic);

}  // namespace bourgen
