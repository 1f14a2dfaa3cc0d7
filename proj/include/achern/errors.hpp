#pragma once

#include <stdexcept>
#include <string>

namespace achern {

// Base of every error raised by the library. Each failure mode named in the
// module contracts has its own subclass so callers can branch on it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ACHERN_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// ring core
ACHERN_DEFINE_ERROR(InadmissiblePrime);
ACHERN_DEFINE_ERROR(InexactDivision);
ACHERN_DEFINE_ERROR(DenominatorNotInvertible);
ACHERN_DEFINE_ERROR(PrecisionMismatch);
ACHERN_DEFINE_ERROR(PrecisionTooLarge);
ACHERN_DEFINE_ERROR(NonUnit);

// series
ACHERN_DEFINE_ERROR(RingMismatch);
ACHERN_DEFINE_ERROR(NonzeroConstantTerm);
ACHERN_DEFINE_ERROR(SingularConstantTerm);

// solver / globalizer / curvature
ACHERN_DEFINE_ERROR(InvalidForm);
ACHERN_DEFINE_ERROR(InvalidParams);
ACHERN_DEFINE_ERROR(NonUniqueStep);
ACHERN_DEFINE_ERROR(AmbiguousReconstruction);
ACHERN_DEFINE_ERROR(NotGlobalAlongIdentity);
ACHERN_DEFINE_ERROR(CertificateFailure);
ACHERN_DEFINE_ERROR(CurvatureNotDivisible);
ACHERN_DEFINE_ERROR(FormMismatch);

// classical
ACHERN_DEFINE_ERROR(SymmetryViolation);
ACHERN_DEFINE_ERROR(DimensionMismatch);
ACHERN_DEFINE_ERROR(IndexOutOfRange);

// cli
ACHERN_DEFINE_ERROR(ConfigError);

#undef ACHERN_DEFINE_ERROR

}  // namespace achern
