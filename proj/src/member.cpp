#include "bourgen/member.hpp"

#include <cmath>
#include <cstdio>

#include "bourgen/errors.hpp"

namespace bourgen {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

GeneratrixMetric GeneratrixMetric::from_expression(const Expression& expr, double s_min, double s_max) {
  if (!(s_max > s_min)) throw ConfigError("generatrix: empty s range");
  GeneratrixMetric g;
  g.value_ = [expr](double s) { return expr(s); };
  g.derivative_ = [expr](double s) { return expr.evaluate_dual(s).derivative; };
  g.s_min_ = s_min;
  g.s_max_ = s_max;
  g.description_ = expr.text();
  g.check_positive();
  return g;
}

GeneratrixMetric GeneratrixMetric::from_spline(HermiteSpline spline) {
  GeneratrixMetric g;
  g.s_min_ = spline.front();
  g.s_max_ = spline.back();
  g.table_ = std::move(spline);
  const auto table = std::make_shared<const HermiteSpline>(*g.table_);
  g.value_ = [table](double s) { return (*table)(s); };
  g.derivative_ = [table](double s) { return table->derivative(s); };
  g.description_ = "table";
  g.check_positive();
  return g;
}

GeneratrixMetric GeneratrixMetric::from_table(std::vector<double> s, std::vector<double> u) {
  return from_spline(HermiteSpline::from_samples(std::move(s), std::move(u), true));
}

GeneratrixMetric GeneratrixMetric::from_functions(std::function<double(double)> u, std::function<double(double)> du,
                                                  double s_min, double s_max, std::string description) {
  if (!(s_max > s_min)) throw ConfigError("generatrix: empty s range");
  GeneratrixMetric g;
  g.value_ = std::move(u);
  g.derivative_ = std::move(du);
  g.s_min_ = s_min;
  g.s_max_ = s_max;
  g.description_ = std::move(description);
  g.check_positive();
  return g;
}

void GeneratrixMetric::check_positive() const {
  const auto fail = [](double s, double v) {
    throw DomainError("generatrix: U(s) must be positive and finite; U(" + fmt(s) + ") = " + fmt(v));
  };
  if (table_) {
    for (std::size_t k = 0; k < table_->nodes().size(); ++k)
      if (!(table_->values()[k] > 0.0) || !std::isfinite(table_->values()[k]))
        fail(table_->nodes()[k], table_->values()[k]);
    return;
  }
  for (const double s : linspace(s_min_, s_max_, 1001)) {
    const double v = value_(s);
    if (!(v > 0.0) || !std::isfinite(v)) fail(s, v);
  }
}

SurfaceMember::SurfaceMember(std::vector<MemberSample> samples, MemberMetadata metadata)
    : samples_(std::move(samples)), metadata_(std::move(metadata)) {
  if (samples_.size() < 2) throw GridMismatchError("SurfaceMember: need at least 2 samples");
  if (!(metadata_.m > 0.0)) throw ConfigError("m must be positive");
  const std::size_t n = samples_.size();
  std::vector<double> s(n), a(n), b(n), v(n), da(n), db(n), dv(n);
  for (std::size_t k = 0; k < n; ++k) {
    const MemberSample& p = samples_[k];
    s[k] = p.s;
    a[k] = p.x1;
    b[k] = p.x2;
    v[k] = p.V;
    da[k] = p.dx1;
    db[k] = p.dx2;
    dv[k] = p.dV;
  }
  x1_ = HermiteSpline(s, std::move(a), std::move(da));
  x2_ = HermiteSpline(s, std::move(b), std::move(db));
  v_ = HermiteSpline(std::move(s), std::move(v), std::move(dv));
}

GeneratrixMetric SurfaceMember::generatrix() const {
  std::vector<double> s, u, du;
  for (const MemberSample& p : samples_) {
    s.push_back(p.s);
    u.push_back(p.U);
    du.push_back(p.dU);
  }
  return GeneratrixMetric::from_spline(HermiteSpline(std::move(s), std::move(u), std::move(du)));
}

}  // namespace bourgen
