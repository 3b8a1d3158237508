#include "liespline/error.hpp"

namespace liespline {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AngleNearPi: return "AngleNearPi";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::NonmonotoneKnots: return "NonmonotoneKnots";
    case ErrorCode::MissingVelocities: return "MissingVelocities";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace liespline
