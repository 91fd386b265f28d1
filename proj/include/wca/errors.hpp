// Typed errors raised by parsing, construction and capability checks.
// Expected analysis outcomes (no solution, exhausted budget) are reported
// through result types instead; exceptions here mean the input or the
// requested operation itself was invalid.

#ifndef WCA_ERRORS_HPP
#define WCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wca {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element token does not match the instance grammar or denotes nothing.
struct MalformedElement : Error {
  using Error::Error;
};

// Operation requested on an instance lacking the needed capability flag.
struct CapabilityMismatch : Error {
  using Error::Error;
};

// Sampled law check failed; carries the law name and the witness triple.
struct LawViolation : Error {
  LawViolation(const std::string& law_, const std::string& witness_)
      : Error("law violation: " + law_ + " at " + witness_),
        law(law_),
        witness(witness_) {}
  std::string law;
  std::string witness;
};

struct NotAPoset : Error {
  using Error::Error;
};

struct InvalidModulus : Error {
  using Error::Error;
};

struct ZeroDenominator : Error {
  using Error::Error;
};

struct DuplicateName : Error {
  using Error::Error;
};

struct UnknownSemiring : Error {
  using Error::Error;
};

// Guard set mentions a condition below which some condition is missing.
struct GuardNotDownclosed : Error {
  using Error::Error;
};

// Model file rejected; line is 1-based, 0 when no line applies.
struct ParseError : Error {
  ParseError(std::size_t line_, const std::string& msg)
      : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
  std::size_t line;
};

}  // namespace wca

#endif
