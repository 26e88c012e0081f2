#pragma once

#include <stdexcept>
#include <string>

namespace mixnorm {

enum class ErrorCode {
  SpecParse = 1,
  UnsupportedDimension,
  UnknownSuite,
  UnknownFamily,
  NotAdmissible,
  NegativeGamma,
  NonFiniteSample,
  QuadratureFailure,
  DegenerateFit,
  InvalidArgument,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace mixnorm
