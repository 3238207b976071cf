#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biphoton {

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  NoPhasematch,
  AlreadyMatched,
  DegenerateGrid,
  BadDomain,
  NumericalFailure,
  ZeroHeraldRate,
  NotAsymmetric,
  NoOppositeSign,
  ZeroMismatch,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace biphoton
