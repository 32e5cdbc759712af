#pragma once

#include <stdexcept>
#include <string>

namespace logahoric {

/// Base class of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

#define LOGAHORIC_DEFINE_ERROR(Name, Kind)                       \
  class Name : public Error {                                    \
   public:                                                       \
    using Error::Error;                                          \
    const char* kind() const noexcept override { return Kind; }  \
  };

LOGAHORIC_DEFINE_ERROR(ShapeError, "shape")
LOGAHORIC_DEFINE_ERROR(UnsupportedType, "unsupported-type")
LOGAHORIC_DEFINE_ERROR(UnsupportedRealization, "unsupported-realization")
LOGAHORIC_DEFINE_ERROR(FiltrationError, "filtration")
LOGAHORIC_DEFINE_ERROR(DivisorError, "divisor")
LOGAHORIC_DEFINE_ERROR(TraceError, "trace")
LOGAHORIC_DEFINE_ERROR(ConstraintError, "constraint")
LOGAHORIC_DEFINE_ERROR(GroupError, "group")
LOGAHORIC_DEFINE_ERROR(InvalidReduction, "invalid-reduction")
LOGAHORIC_DEFINE_ERROR(NormalizationError, "normalization")
LOGAHORIC_DEFINE_ERROR(AlgebraMismatch, "algebra-mismatch")
LOGAHORIC_DEFINE_ERROR(IndexError, "index")
LOGAHORIC_DEFINE_ERROR(ParseError, "parse")

#undef LOGAHORIC_DEFINE_ERROR

}  // namespace logahoric
