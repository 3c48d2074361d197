#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace engel {

enum class ErrorCode {
  NotImmersed,
  BadDescription,
  DegenerateCusp,
  ZNotClosed,
  NotClosed,
  NotEmbedded,
  SingularSystem,
  ImmersionLost,
  AmbiguousWinding,
  OddCuspImbalance,
  SynthesisFailed,
  UnsupportedOverlap,
  BadMove,
  SyntaxError,
  DuplicateName,
  UnknownMoveKind,
  UnknownName,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& expected, const std::string& found = {})
      : Error(ErrorCode::SyntaxError, std::to_string(line) + ":" + std::to_string(column) +
                                          ": expected " + expected +
                                          (found.empty() ? "" : ", found " + found)),
        line_(line),
        column_(column),
        expected_(expected) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

}  // namespace engel
