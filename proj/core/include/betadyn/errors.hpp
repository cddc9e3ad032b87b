#pragma once

#include <stdexcept>
#include <string>

namespace betadyn {

/// Base of every library error. `name()` is the stable identifier printed by
/// the CLI (e.g. "PrecisionExhausted").
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define BETADYN_DEFINE_ERROR(Type)                                        \
  class Type : public Error {                                             \
   public:                                                                \
    explicit Type(const std::string& what) : Error(#Type, what) {}        \
  }

BETADYN_DEFINE_ERROR(PrecisionExhausted);
BETADYN_DEFINE_ERROR(ParseError);
BETADYN_DEFINE_ERROR(DomainError);
BETADYN_DEFINE_ERROR(InvalidPrefix);
BETADYN_DEFINE_ERROR(NotAdmissible);
BETADYN_DEFINE_ERROR(NotSelfAdmissible);
BETADYN_DEFINE_ERROR(CapExceeded);
BETADYN_DEFINE_ERROR(DepthExceeded);
BETADYN_DEFINE_ERROR(EmptyRegime);
BETADYN_DEFINE_ERROR(DepthTooSmall);
BETADYN_DEFINE_ERROR(InconsistentPrefix);
BETADYN_DEFINE_ERROR(VerificationFailed);
BETADYN_DEFINE_ERROR(IoError);

#undef BETADYN_DEFINE_ERROR

}  // namespace betadyn
