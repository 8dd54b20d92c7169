#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bourgen/expression.hpp"
#include "bourgen/numerics.hpp"

namespace bourgen {

// The positive function U(s) of the target metric ds^2 + U(s)^2 dt^2.
// Either a closed-form expression (derivative by forward-mode AD) or a
// sampled table (monotone cubic interpolation, derivative of the interpolant).
class GeneratrixMetric {
 public:
  static GeneratrixMetric from_expression(const Expression& expr, double s_min, double s_max);
  static GeneratrixMetric from_table(std::vector<double> s, std::vector<double> u);
  static GeneratrixMetric from_spline(HermiteSpline spline);
  static GeneratrixMetric from_functions(std::function<double(double)> u, std::function<double(double)> du,
                                         double s_min, double s_max, std::string description);

  double operator()(double s) const { return value_(s); }
  double derivative(double s) const { return derivative_(s); }

  double s_min() const noexcept { return s_min_; }
  double s_max() const noexcept { return s_max_; }
  bool sampled() const noexcept { return table_.has_value(); }
  const std::optional<HermiteSpline>& table() const noexcept { return table_; }
  // Expression text, or "table" for sampled data.
  const std::string& description() const noexcept { return description_; }

 private:
  GeneratrixMetric() = default;
  void check_positive() const;

  std::function<double(double)> value_;
  std::function<double(double)> derivative_;
  double s_min_ = 0.0, s_max_ = 0.0;
  std::optional<HermiteSpline> table_;
  std::string description_;
};

}  // namespace bourgen
