#pragma once

#include <stdexcept>
#include <string>

namespace surfkernel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SURFKERNEL_DEFINE_ERROR(Name)      \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

SURFKERNEL_DEFINE_ERROR(ValidationError);
SURFKERNEL_DEFINE_ERROR(SizeError);
SURFKERNEL_DEFINE_ERROR(ShapeError);
SURFKERNEL_DEFINE_ERROR(IndexError);
SURFKERNEL_DEFINE_ERROR(NormalizationError);
SURFKERNEL_DEFINE_ERROR(NotInKernelError);
SURFKERNEL_DEFINE_ERROR(InternalError);
SURFKERNEL_DEFINE_ERROR(GlueError);
SURFKERNEL_DEFINE_ERROR(ReductionError);
SURFKERNEL_DEFINE_ERROR(LedgerError);
SURFKERNEL_DEFINE_ERROR(DomainError);
SURFKERNEL_DEFINE_ERROR(VerificationError);
SURFKERNEL_DEFINE_ERROR(ClassificationError);
SURFKERNEL_DEFINE_ERROR(ParseError);

#undef SURFKERNEL_DEFINE_ERROR

/// Raised when the Riemann-Hurwitz value is not an integer genus >= 2.
/// Carries the exact value of g as a reduced fraction.
class GenusError : public Error {
 public:
  GenusError(const std::string& what, long long numerator, long long denominator)
      : Error(what), numerator_(numerator), denominator_(denominator) {}

  long long numerator() const noexcept { return numerator_; }
  long long denominator() const noexcept { return denominator_; }

 private:
  long long numerator_;
  long long denominator_;
};

}  // namespace surfkernel
