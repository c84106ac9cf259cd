#pragma once

#include <stdexcept>
#include <string>

namespace dyncert {

enum class Errc {
  AlphabetMismatch,
  EmptyShift,
  InconsistentOracle,
  ZeroHits,
  NoConvergence,
  ExceptionalPoint,
  PrecisionExhausted,
  RationalDetected,
  InfeasibleWeights,
  InvalidArgument,
  ParseError,
};

const char* errc_name(Errc code) noexcept;

/// Single exception type for every failure the library reports. The code
/// identifies which contract failed; the message is meant for humans.
class DynError : public std::runtime_error {
 public:
  DynError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dyncert
