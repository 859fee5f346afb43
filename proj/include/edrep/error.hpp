// Error codes shared across the library. Codes are machine-readable so the
// CLI can map them onto exit statuses (certificate failures vs. bad input).
#pragma once

#include <stdexcept>
#include <string>

namespace edrep {

enum class Errc {
  CapExceeded,
  NotPermutation,
  BadPrime,
  BadOrder,
  NotAUnit,
  NotASubfield,
  GroupMismatch,
  NotIrreducible,
  NotACharacter,
  ValuesNotInField,
  NonConstantMultiplicity,
  NotAHomomorphism,
  BadPlace,
  FactorizationTimeout,
  BadDivisibility,
  NotBalanced,
  NotPPowers,
  IndependenceFails,
  Unsupported,
  IrrationalRoots,
  UnsupportedPrime,
  DuplicatePoint,
  DegenerateEvaluation,
  BadInput,
  Internal,
};

const char* errc_name(Errc c);

// Certificate failures mean "the method cannot certify", not malformed input.
inline bool errc_is_certificate_failure(Errc c) {
  return c == Errc::Unsupported || c == Errc::IndependenceFails;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace edrep
