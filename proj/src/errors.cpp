#include "cusp/errors.hpp"

namespace cusp {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SumMismatch: return "SumMismatch";
    case Errc::NotOpen: return "NotOpen";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::InfiniteValue: return "InfiniteValue";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::NotWayBelow: return "NotWayBelow";
    case Errc::NegativeMultiplicity: return "NegativeMultiplicity";
    case Errc::NegativeRank: return "NegativeRank";
    case Errc::Infeasible: return "Infeasible";
    case Errc::PostconditionFailure: return "PostconditionFailure";
    case Errc::BoundaryMisalignment: return "BoundaryMisalignment";
    case Errc::StageOutOfRange: return "StageOutOfRange";
    case Errc::StageExhausted: return "StageExhausted";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace cusp
