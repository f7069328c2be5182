#include "c1mortar/error.hpp"

namespace c1mortar {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::MultiplicityOutOfRange: return "MultiplicityOutOfRange";
    case ErrorCode::InvalidKnotVector: return "InvalidKnotVector";
    case ErrorCode::TooFewElements: return "TooFewElements";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorCode::NonConformingInterface: return "NonConformingInterface";
    case ErrorCode::OrientationMismatch: return "OrientationMismatch";
    case ErrorCode::DanglingSide: return "DanglingSide";
    case ErrorCode::SingularFit: return "SingularFit";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonotone:
    case ErrorCode::MultiplicityOutOfRange:
    case ErrorCode::InvalidKnotVector:
    case ErrorCode::TooFewElements:
    case ErrorCode::DegreeTooLow:
    case ErrorCode::OutOfDomain:
    case ErrorCode::OrderOutOfRange:
    case ErrorCode::MeshTooCoarse:
    case ErrorCode::InvalidConfig:
      return 2;
    case ErrorCode::DegenerateJacobian:
    case ErrorCode::NonConformingInterface:
    case ErrorCode::OrientationMismatch:
    case ErrorCode::DanglingSide:
    case ErrorCode::ParseError:
      return 3;
    case ErrorCode::SingularFit:
    case ErrorCode::SingularSystem:
    case ErrorCode::ResidualTooLarge:
      return 4;
    case ErrorCode::IoFailure:
      return 5;
  }
  return 1;
}

}  // namespace c1mortar
