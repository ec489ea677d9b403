#include "openmic/errors.hpp"

namespace openmic {

const char* err_name(Err code) {
  switch (code) {
    case Err::Config: return "Config";
    case Err::UnknownField: return "UnknownField";
    case Err::InvariantViolation: return "InvariantViolation";
    case Err::MissingField: return "MissingField";
    case Err::MissingHistory: return "MissingHistory";
    case Err::Gateway: return "GatewayError";
    case Err::Protocol: return "ProtocolError";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::ZeroVector: return "ZeroVector";
    case Err::TranscriptExhausted: return "TranscriptExhausted";
    case Err::Schema: return "SchemaViolation";
    case Err::DuplicateId: return "DuplicateId";
    case Err::MalformedLine: return "MalformedLine";
    case Err::Anonymization: return "AnonymizationFailure";
    case Err::UnclosedSpan: return "UnclosedSpan";
    case Err::UnknownMarker: return "UnknownMarker";
    case Err::MalformedDuration: return "MalformedDuration";
    case Err::NestingViolation: return "NestingViolation";
    case Err::EmptyScript: return "EmptyScript";
    case Err::WeightSum: return "WeightSumError";
    case Err::Io: return "IoError";
  }
  return "UnknownError";
}

}  // namespace openmic
