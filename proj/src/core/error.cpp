#include "dyncert/core/error.hpp"

namespace dyncert {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::AlphabetMismatch: return "AlphabetMismatch";
    case Errc::EmptyShift: return "EmptyShift";
    case Errc::InconsistentOracle: return "InconsistentOracle";
    case Errc::ZeroHits: return "ZeroHits";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ExceptionalPoint: return "ExceptionalPoint";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::RationalDetected: return "RationalDetected";
    case Errc::InfeasibleWeights: return "InfeasibleWeights";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace dyncert
