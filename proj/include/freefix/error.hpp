#pragma once

#include <stdexcept>
#include <string>

namespace freefix {

enum class ErrorCode {
  kInput = 1,         // malformed text or JSON
  kDomain = 2,        // argument outside an operation's domain
  kRankMismatch = 3,  // operands over different ambient ranks
  kNotAutomorphism = 4,
  kNotInvariant = 5,
  kPrecondition = 6,  // a stated precondition failed, message names it
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace freefix
