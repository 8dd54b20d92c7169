#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bourgen {

// Root of every error raised by the library. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BOURGEN_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

BOURGEN_DEFINE_ERROR(DomainError)
BOURGEN_DEFINE_ERROR(SingularMetricError)
BOURGEN_DEFINE_ERROR(DegenerateGradientError)
BOURGEN_DEFINE_ERROR(TransversalityError)
BOURGEN_DEFINE_ERROR(RankDeficiencyError)
BOURGEN_DEFINE_ERROR(DegenerateParametrizationError)
BOURGEN_DEFINE_ERROR(RectExitError)
BOURGEN_DEFINE_ERROR(StepTooLargeError)
BOURGEN_DEFINE_ERROR(GridMismatchError)
BOURGEN_DEFINE_ERROR(NonConstantVolumeError)
BOURGEN_DEFINE_ERROR(SpecError)
BOURGEN_DEFINE_ERROR(RangeError)
BOURGEN_DEFINE_ERROR(ConfigError)
BOURGEN_DEFINE_ERROR(IoError)

#undef BOURGEN_DEFINE_ERROR

class NewtonDivergenceError : public Error {
 public:
  NewtonDivergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// The target metric is not realizable at this m along this s.
class RadicandNegativeError : public Error {
 public:
  RadicandNegativeError(double s, double radicand);
  double s() const noexcept { return s_; }
  double radicand() const noexcept { return radicand_; }

 private:
  double s_;
  double radicand_;
};

// A closed-form family left its validity range; `which` names the radicand.
class DomainViolationError : public Error {
 public:
  DomainViolationError(double s, std::string which, double value);
  double s() const noexcept { return s_; }
  const std::string& which() const noexcept { return which_; }

 private:
  double s_;
  std::string which_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail = {});
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace bourgen
