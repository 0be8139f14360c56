#include "sideinfo/common.hpp"

namespace sideinfo {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NegativeMass: return "NegativeMass";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::ZeroMarginal: return "ZeroMarginal";
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::AlphabetMismatch: return "AlphabetMismatch";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::EmptyRestriction: return "EmptyRestriction";
    case Errc::BoundViolated: return "BoundViolated";
    case Errc::ZeroProbabilitySymbol: return "ZeroProbabilitySymbol";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::KraftViolated: return "KraftViolated";
    case Errc::StreamLengthMismatch: return "StreamLengthMismatch";
    case Errc::RegimeUndetermined: return "RegimeUndetermined";
    case Errc::ParseError: return "ParseError";
  }
  return "Error";
}

}  // namespace sideinfo
