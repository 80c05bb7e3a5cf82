#include "spectral_tetris/errors.hpp"

namespace spectral_tetris {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::Underdetermined: return "Underdetermined";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SumMismatch: return "SumMismatch";
    case ErrorKind::BlockDomain: return "BlockDomain";
    case ErrorKind::NoSuchBlock: return "NoSuchBlock";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::DftPathStuck: return "DftPathStuck";
    case ErrorKind::NotSTReady: return "NotSTReady";
    case ErrorKind::ReorderFailed: return "ReorderFailed";
    case ErrorKind::SpectrumMismatch: return "SpectrumMismatch";
    case ErrorKind::NotParseval: return "NotParseval";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NoExtension: return "NoExtension";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace spectral_tetris
