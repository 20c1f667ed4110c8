#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsatlab {

enum class ErrorCode {
  SyntaxError,
  MixedWidth,
  DuplicateVariable,
  IndexOutOfRange,
  PartialEvaluation,
  TooManyVariables,
  DimensionMismatch,
  NotHermitian,
  NotPSD,
  NoConvergence,
  SourceUnsatisfied,
  ZeroScale,
  EmptyInstance,
  NotDiagonal,
  EqualVarSets,
  UnsatisfiableFormula,
  BoundsExceeded,
  GoldenMismatch,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; the C API maps `code()`
// onto its integer return values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsatlab
