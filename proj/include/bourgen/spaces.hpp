#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bourgen/generatrix.hpp"
#include "bourgen/member.hpp"
#include "bourgen/quotient.hpp"

namespace bourgen {

enum class SpaceKind { euclidean_helicoidal, euclidean_rotational, bcv_helicoidal };

SpaceKind parse_space_kind(const std::string& name);
const char* to_string(SpaceKind kind);

struct SpaceSpec {
  SpaceKind kind = SpaceKind::euclidean_helicoidal;
  double a = 1.0;  // pitch
  double kappa = 0.0, tau = 0.0;

  void validate() const;
  nlohmann::json to_json() const;
  static SpaceSpec from_json(const nlohmann::json& j);
};

// euclidean_helicoidal: Killing field rotation + a * translation, chart from
//   x = x1 cos x3 + x2 sin x3, y = x2 cos x3 - x1 sin x3, z = a x3.
// euclidean_rotational: (x1, x2, x3) = (r, z, angle).
// bcv_helicoidal: (r, angle, z) = (sqrt(x1^2 + x2^2), x3 + atan(x2/x1), a x3)
//   in dr^2/B^2 + r^2 (d angle^2 + ... ) with B = 1 + kappa r^2 / 4.
AdaptedChart3 make_chart(const SpaceSpec& spec);

struct BuiltinSpace {
  SpaceSpec spec;
  AdaptedChart3 chart;
  InvariantFunction theta;  // x2/x1 for helicoidal kinds, x2 for rotational
  QuotientFrame frame;      // analytic inverse of (omega, theta)
};

BuiltinSpace make_space(const SpaceSpec& spec);

// Closed-form family sampled on a grid: rho, lambda and V with
// lambda(s_0) = V(s_0) = 0. The surface is (rho, v, +-lambda + a v) in
// cylindrical coordinates with v = t/m + V(s); the sign is + for the
// Euclidean formulas and - for BCV.
struct ClosedFormFamily {
  SpaceSpec space;
  double m = 1.0;
  int epsilon = 1;
  std::vector<double> s, rho, lambda, V;

  // (r, angle, height) of the closed-form surface at sample k.
  Point3 cylindrical(std::size_t k, double t) const;
};

ClosedFormFamily r3_closed_form(const GeneratrixMetric& U, double m, int epsilon, double a,
                                std::span<const double> s_grid);
ClosedFormFamily bcv_closed_form(const GeneratrixMetric& U, double m, int epsilon, double kappa, double tau,
                                 double a, std::span<const double> s_grid);
// r3 for Euclidean kinds (a = 0 for rotational), bcv otherwise.
ClosedFormFamily closed_form(const SpaceSpec& spec, const GeneratrixMetric& U, double m, int epsilon,
                             std::span<const double> s_grid);

// Cartesian (x, y, z) for the Euclidean kinds, cylindrical (r, angle, z) for BCV.
Point3 to_ambient_coords(const SpaceSpec& spec, const Point3& p);
// Cartesian picture used for meshes (BCV cylindrical coordinates drawn as if Euclidean).
Point3 to_display_coords(const SpaceSpec& spec, const Point3& p);

}  // namespace bourgen
