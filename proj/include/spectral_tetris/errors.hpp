#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectral_tetris {

enum class ErrorKind {
  DomainError,
  InvalidPartition,
  SearchBudgetExceeded,
  Underdetermined,
  OutOfRange,
  SumMismatch,
  BlockDomain,
  NoSuchBlock,
  Infeasible,
  DftPathStuck,
  NotSTReady,
  ReorderFailed,
  SpectrumMismatch,
  NotParseval,
  NotApplicable,
  NoExtension,
  InvalidArgument,
  ParseError,
  Internal,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind plus a human readable
// message that names the violated condition.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace spectral_tetris
