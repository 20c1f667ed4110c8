#include "qsatlab/error.hpp"

namespace qsatlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::MixedWidth: return "MixedWidth";
    case ErrorCode::DuplicateVariable: return "DuplicateVariable";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PartialEvaluation: return "PartialEvaluation";
    case ErrorCode::TooManyVariables: return "TooManyVariables";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SourceUnsatisfied: return "SourceUnsatisfied";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::EmptyInstance: return "EmptyInstance";
    case ErrorCode::NotDiagonal: return "NotDiagonal";
    case ErrorCode::EqualVarSets: return "EqualVarSets";
    case ErrorCode::UnsatisfiableFormula: return "UnsatisfiableFormula";
    case ErrorCode::BoundsExceeded: return "BoundsExceeded";
    case ErrorCode::GoldenMismatch: return "GoldenMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace qsatlab
