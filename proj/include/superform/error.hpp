#pragma once

#include <stdexcept>
#include <string>

namespace superform {

/// Base of every library error. `kind()` is the stable machine-readable
/// name (e.g. "NotADecomposition") that the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SUPERFORM_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& message) : Error(#Name, message) {}      \
  }

SUPERFORM_DEFINE_ERROR(EmptyCell);
SUPERFORM_DEFINE_ERROR(NotADecomposition);
SUPERFORM_DEFINE_ERROR(UnboundedCell);
SUPERFORM_DEFINE_ERROR(AmbientMismatch);
SUPERFORM_DEFINE_ERROR(BidegreeMismatch);
SUPERFORM_DEFINE_ERROR(UnsupportedBidegree);
SUPERFORM_DEFINE_ERROR(NonConstantCoefficients);
SUPERFORM_DEFINE_ERROR(NotSymmetric);
SUPERFORM_DEFINE_ERROR(NotPure);
SUPERFORM_DEFINE_ERROR(NotCodimOne);
SUPERFORM_DEFINE_ERROR(IncompatibleDecompositions);
SUPERFORM_DEFINE_ERROR(ArityMismatch);
SUPERFORM_DEFINE_ERROR(NonPositiveEpsilon);
SUPERFORM_DEFINE_ERROR(InvalidArgument);
SUPERFORM_DEFINE_ERROR(ParseError);
SUPERFORM_DEFINE_ERROR(ValidationError);
SUPERFORM_DEFINE_ERROR(UnknownCommand);

#undef SUPERFORM_DEFINE_ERROR

}  // namespace superform
