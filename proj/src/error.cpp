#include "polyuni/error.hpp"

namespace polyuni {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EvaluationOutsideDomain: return "EvaluationOutsideDomain";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::NoBoundaryConvergence: return "NoBoundaryConvergence";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::RadiusOnZeroModulus: return "RadiusOnZeroModulus";
    case ErrorCode::SchurParameterOutOfDisk: return "SchurParameterOutOfDisk";
    case ErrorCode::RootFindFailure: return "RootFindFailure";
    case ErrorCode::PinNotUnimodular: return "PinNotUnimodular";
    case ErrorCode::ProjectionFailed: return "ProjectionFailed";
    case ErrorCode::UnsupportedTargetShape: return "UnsupportedTargetShape";
    case ErrorCode::SequenceExhausted: return "SequenceExhausted";
    case ErrorCode::InterferenceBudgetExceeded: return "InterferenceBudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidityError: return "ValidityError";
    case ErrorCode::ConfigNotFound: return "ConfigNotFound";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace polyuni
