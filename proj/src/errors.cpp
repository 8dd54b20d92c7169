#include "bourgen/errors.hpp"

#include <cstdio>

namespace bourgen {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + items[i] + "\"";
  }
  return out;
}

}  // namespace

RadicandNegativeError::RadicandNegativeError(double s, double radicand)
    : Error("radicand negative at s=" + fmt_g(s) + " (value " + fmt_g(radicand) +
            "); the metric is not realizable at this m"),
      s_(s),
      radicand_(radicand) {}

DomainViolationError::DomainViolationError(double s, std::string which, double value)
    : Error("closed form leaves its domain at s=" + fmt_g(s) + ": " + which + " = " + fmt_g(value)),
      s_(s),
      which_(std::move(which)) {}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
    : Error("parse error at offset " + std::to_string(offset) + ": expected one of {" + join(expected) + "}" +
            (detail.empty() ? std::string() : " (" + detail + ")")),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace bourgen
