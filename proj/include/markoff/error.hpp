#pragma once

#include <stdexcept>
#include <string>

namespace markoff {

/// Base class of every domain error raised by the library. `name()` is the
/// stable identifier printed by the command line front end.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define MARKOFF_DEFINE_ERROR(Type)                                  \
  class Type : public Error {                                       \
   public:                                                          \
    explicit Type(const std::string& what) : Error(#Type, what) {}  \
  }

// matseq
MARKOFF_DEFINE_ERROR(OracleMismatch);
MARKOFF_DEFINE_ERROR(InvariantViolation);
MARKOFF_DEFINE_ERROR(UnknownFamily);
MARKOFF_DEFINE_ERROR(IndexOutOfRange);
MARKOFF_DEFINE_ERROR(CapExceeded);
// realfield
MARKOFF_DEFINE_ERROR(PrecisionExhausted);
MARKOFF_DEFINE_ERROR(ConsistencyFailure);
MARKOFF_DEFINE_ERROR(RadiusTooLarge);
MARKOFF_DEFINE_ERROR(DerivativeVanishes);
MARKOFF_DEFINE_ERROR(NoConvergence);
// auditors
MARKOFF_DEFINE_ERROR(UnknownEstimate);
// experiments
MARKOFF_DEFINE_ERROR(DegreeTooHigh);
MARKOFF_DEFINE_ERROR(NotFound);
MARKOFF_DEFINE_ERROR(BudgetExceeded);
MARKOFF_DEFINE_ERROR(EmptyRange);
// cli / io
MARKOFF_DEFINE_ERROR(FormatError);
MARKOFF_DEFINE_ERROR(IoError);

#undef MARKOFF_DEFINE_ERROR

}  // namespace markoff
