#include "biphoton/error.hpp"

namespace biphoton {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NoPhasematch: return "NoPhasematch";
    case ErrorCode::AlreadyMatched: return "AlreadyMatched";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::BadDomain: return "BadDomain";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::ZeroHeraldRate: return "ZeroHeraldRate";
    case ErrorCode::NotAsymmetric: return "NotAsymmetric";
    case ErrorCode::NoOppositeSign: return "NoOppositeSign";
    case ErrorCode::ZeroMismatch: return "ZeroMismatch";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace biphoton
