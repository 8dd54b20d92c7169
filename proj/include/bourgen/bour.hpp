#pragma once

#include <string>
#include <vector>

#include "bourgen/generatrix.hpp"
#include "bourgen/member.hpp"
#include "bourgen/natural.hpp"
#include "bourgen/quotient.hpp"

namespace bourgen {

enum class Integrator { euler, rk4 };

Integrator parse_integrator(const std::string& name);
const char* to_string(Integrator integrator);

// m is kept positive: omega > 0 and U > 0 leave no room for omega = -m U.
struct BourParams {
  double m = 1.0;
  int epsilon = 1;
  double s_min = 0.0, s_max = 1.0;
  double step = 0.01;
  Integrator integrator = Integrator::rk4;

  void validate() const;
  // Uniform grid with ceil((s_max - s_min) / step) intervals.
  std::vector<double> grid() const;
};

struct ProfileSample {
  double s, x1, x2, omega, theta;
  double domega, dtheta, dx1, dx2;  // d/ds
};

struct ProfileCurve {
  std::vector<ProfileSample> samples;
  QuotientFrame frame;
  double m = 1.0;
  int epsilon = 1;
  double theta0 = 0.0;
};

// Radicand values in (-kRadicandClamp, kRadicandClamp) are treated as 0.
inline constexpr double kRadicandClamp = 1e-12;

// theta'(s) = eps |grad theta| sqrt(|grad omega|^2 - m^2 U'^2) / |grad omega|
// at (omega, theta) = (m U(s), theta); the unit-speed condition in the
// orthogonal frame.
double ode_rhs(double s, double theta, const GeneratrixMetric& U, const BourParams& params,
               const QuotientFrame& frame);

ProfileCurve integrate_profile(const GeneratrixMetric& U, const BourParams& params, const QuotientFrame& frame,
                               double theta0);

struct VerticalProfile {
  std::vector<double> s, V, dV;
};

// V(s) = -int (x1' g13 + x2' g23) / (m^2 U^2) ds with V(s_min) = 0.
VerticalProfile vertical_quadrature(const ProfileCurve& profile, const AdaptedChart3& chart,
                                    const BourParams& params, const GeneratrixMetric& U);

SurfaceMember assemble_member(const ProfileCurve& profile, const VerticalProfile& vertical, const BourParams& params,
                              const GeneratrixMetric& U);

// integrate_profile + vertical_quadrature + assemble_member.
SurfaceMember generate_member(const GeneratrixMetric& U, const BourParams& params, const QuotientFrame& frame,
                              double theta0);

// When omega is constant (= 1) the family is a single surface over a
// unit-speed quotient curve; u of the curve is taken as s.
SurfaceMember constant_volume_member(const AdaptedChart3& chart, const LiftedCurve& profile_curve);

// Chart for the Killing field X / c: g_i3 / c, g33 / c^2.
AdaptedChart3 rescale_killing(const AdaptedChart3& chart, double c);

}  // namespace bourgen
