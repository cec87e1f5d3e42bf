#pragma once

#include <stdexcept>
#include <string>

namespace jetgeo {

// Base of every error the engine raises. kind() is the stable name used in
// CLI diagnostics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

#define JETGEO_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    using Error::Error;                                             \
    const char* kind() const noexcept override { return #Name; }    \
  }

// symbolic core
JETGEO_DEFINE_ERROR(MalformedExpression);
JETGEO_DEFINE_ERROR(UnknownVariable);
JETGEO_DEFINE_ERROR(UnboundVariable);
JETGEO_DEFINE_ERROR(EvaluationSingularity);
JETGEO_DEFINE_ERROR(SampleExhausted);
JETGEO_DEFINE_ERROR(ArithmeticOverflow);

// geometry / tensors
JETGEO_DEFINE_ERROR(SingularMetric);
JETGEO_DEFINE_ERROR(DimensionTooLarge);
JETGEO_DEFINE_ERROR(IndexOutOfRange);
JETGEO_DEFINE_ERROR(SignatureMismatch);
JETGEO_DEFINE_ERROR(InternalInconsistency);

// coordinate changes
JETGEO_DEFINE_ERROR(NotProductChange);
JETGEO_DEFINE_ERROR(JacobianSingular);
JETGEO_DEFINE_ERROR(InverseMismatch);

// configuration files
JETGEO_DEFINE_ERROR(ShapeMismatch);
JETGEO_DEFINE_ERROR(MissingSection);

#undef JETGEO_DEFINE_ERROR

class ConfigSyntax : public Error {
 public:
  ConfigSyntax(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  const char* kind() const noexcept override { return "ConfigSyntax"; }
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace jetgeo
