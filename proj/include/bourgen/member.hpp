#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bourgen/generatrix.hpp"
#include "bourgen/numerics.hpp"
#include "bourgen/types.hpp"

namespace bourgen {

// One s-sample of a family member together with exact s-derivatives.
struct MemberSample {
  double s = 0.0;
  double x1 = 0.0, x2 = 0.0;
  double omega = 0.0, theta = 0.0;
  double V = 0.0;
  double dx1 = 0.0, dx2 = 0.0, dV = 0.0;
  double U = 0.0, dU = 0.0;
};

struct MemberMetadata {
  double m = 1.0;
  int epsilon = 1;
  double theta0 = 0.0;
  std::string chart_label;
  std::string generatrix;
  nlohmann::json space;  // the space stanza this member was generated in
};

// psi_m(s, t) = (x1(s), x2(s), t/m + V(s)) in adapted coordinates. Between
// samples x1, x2 and V are cubic Hermite interpolants of the stored values
// and derivatives.
class SurfaceMember {
 public:
  SurfaceMember(std::vector<MemberSample> samples, MemberMetadata metadata);

  Point2 profile_at(double s) const { return {x1_(s), x2_(s)}; }
  double vertical_at(double s) const { return v_(s); }
  Point3 map(double s, double t) const {
    return {x1_(s), x2_(s), t / metadata_.m + v_(s)};
  }

  double s_min() const { return samples_.front().s; }
  double s_max() const { return samples_.back().s; }
  double m() const noexcept { return metadata_.m; }
  const std::vector<MemberSample>& samples() const noexcept { return samples_; }
  const MemberMetadata& metadata() const noexcept { return metadata_; }

  // U(s) rebuilt from the stored (U, dU) samples.
  GeneratrixMetric generatrix() const;

 private:
  std::vector<MemberSample> samples_;
  MemberMetadata metadata_;
  HermiteSpline x1_, x2_, v_;
};

}  // namespace bourgen
