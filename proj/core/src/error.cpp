#include "avfq/error.hpp"

namespace avfq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::NotQSymmetric: return "NotQSymmetric";
    case ErrorCode::NotFullRank: return "NotFullRank";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::DegenerateTrace: return "DegenerateTrace";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::PartialFactorization: return "PartialFactorization";
    case ErrorCode::NotWeil: return "NotWeil";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::PartitionTooLong: return "PartitionTooLong";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NetworkError: return "NetworkError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CacheMiss: return "CacheMiss";
    case ErrorCode::OracleDisagreement: return "OracleDisagreement";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace avfq
