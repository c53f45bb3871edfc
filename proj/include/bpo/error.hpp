#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bpo {

enum class Errc {
  LengthMismatch,
  NonPositiveCount,
  NonFiniteEntry,
  MeanOutOfRange,
  TooFewArms,
  DomainError,
  WrongArity,
  RankOutOfRange,
  EmptySubset,
  EnumerationTooLarge,
  ParseError,
  NonFiniteEvaluation,
  NoSignChange,
  ToleranceNotMet,
  NoValidDelta,
};

std::string_view errc_name(Errc code) noexcept;

// Input-shaped problems (bad files, bad arguments) as opposed to numerical
// failures. The CLI maps the former to exit code 2 and the latter to 3.
bool is_validation_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bpo
