#pragma once

#include <stdexcept>
#include <string>

namespace hurwitz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HURWITZ_ERROR(Name)                  \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(std::string(#Name ": ") + what) {} \
  }

HURWITZ_ERROR(AmbiguousRounding);
HURWITZ_ERROR(AmbiguousBoundary);
HURWITZ_ERROR(ZeroInput);
HURWITZ_ERROR(PrecisionExhausted);
HURWITZ_ERROR(DivisionByZero);
HURWITZ_ERROR(UnclassifiableShape);
HURWITZ_ERROR(LowerBoundInapplicable);
HURWITZ_ERROR(FilterTooWeak);
HURWITZ_ERROR(TailBoundMissing);
HURWITZ_ERROR(NoBracket);
HURWITZ_ERROR(ParseError);
HURWITZ_ERROR(PreconditionViolation);

#undef HURWITZ_ERROR

}  // namespace hurwitz
