#include "engel/error.hpp"

namespace engel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotImmersed: return "NotImmersed";
    case ErrorCode::BadDescription: return "BadDescription";
    case ErrorCode::DegenerateCusp: return "DegenerateCusp";
    case ErrorCode::ZNotClosed: return "ZNotClosed";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotEmbedded: return "NotEmbedded";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ImmersionLost: return "ImmersionLost";
    case ErrorCode::AmbiguousWinding: return "AmbiguousWinding";
    case ErrorCode::OddCuspImbalance: return "OddCuspImbalance";
    case ErrorCode::SynthesisFailed: return "SynthesisFailed";
    case ErrorCode::UnsupportedOverlap: return "UnsupportedOverlap";
    case ErrorCode::BadMove: return "BadMove";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownMoveKind: return "UnknownMoveKind";
    case ErrorCode::UnknownName: return "UnknownName";
  }
  return "Unknown";
}

}  // namespace engel
