#include "bpo/error.hpp"

namespace bpo {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonPositiveCount: return "NonPositiveCount";
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::MeanOutOfRange: return "MeanOutOfRange";
    case Errc::TooFewArms: return "TooFewArms";
    case Errc::DomainError: return "DomainError";
    case Errc::WrongArity: return "WrongArity";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::ParseError: return "ParseError";
    case Errc::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case Errc::NoSignChange: return "NoSignChange";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::NoValidDelta: return "NoValidDelta";
  }
  return "Unknown";
}

bool is_validation_error(Errc code) noexcept {
  switch (code) {
    case Errc::NonFiniteEvaluation:
    case Errc::NoSignChange:
    case Errc::ToleranceNotMet:
    case Errc::NoValidDelta:
      return false;
    default:
      return true;
  }
}

}  // namespace bpo
