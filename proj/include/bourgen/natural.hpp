#pragma once

#include <span>
#include <vector>

#include "bourgen/chart.hpp"
#include "bourgen/generatrix.hpp"
#include "bourgen/member.hpp"

namespace bourgen {

struct CurveSample {
  double u, x1, x2, x3;
};

// A lift gamma(u) of a profile curve; the surface is psi(u, v) = gamma(u) + v e3.
class LiftedCurve {
 public:
  explicit LiftedCurve(std::vector<CurveSample> samples);

  const std::vector<CurveSample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

  // d gamma / du at every sample (5-point differences, one-sided at the ends).
  std::vector<Point3> derivatives() const;

 private:
  std::vector<CurveSample> samples_;
};

struct PullbackSample {
  double u, E, F, G;
};

// E = g(gamma', gamma'), F = g(gamma', X), G = g(X, X) along the curve.
std::vector<PullbackSample> pullback_coefficients(const AdaptedChart3& chart, const LiftedCurve& curve);

inline constexpr double kOrbitTangencyEta = 1e-10;

struct NaturalParameters {
  std::vector<double> u, s;
  HermiteSpline s_of_u;   // s = int sqrt(E - F^2/G) du, s(u_0) = 0
  HermiteSpline u_of_s;   // inverse, exact slopes
  HermiteSpline t_shift;  // int F/G du; t = v + t_shift(u)
  GeneratrixMetric U;     // sqrt(G(u(s)))
};

// Throws DegenerateParametrizationError where E - F^2/G <= eta.
NaturalParameters to_natural(std::span<const PullbackSample> coeffs);

// The surface of `curve` re-parametrized by (s, t), as an m = 1 member.
SurfaceMember natural_member(const AdaptedChart3& chart, const LiftedCurve& curve, const NaturalParameters& nat);

}  // namespace bourgen
