#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyuni {

enum class ErrorCode {
    DimensionMismatch,
    EvaluationOutsideDomain,
    PoleHit,
    NoBoundaryConvergence,
    EmptySelection,
    RadiusOnZeroModulus,
    SchurParameterOutOfDisk,
    RootFindFailure,
    PinNotUnimodular,
    ProjectionFailed,
    UnsupportedTargetShape,
    SequenceExhausted,
    InterferenceBudgetExceeded,
    ParseError,
    ValidityError,
    ConfigNotFound,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can turn it into a machine-readable error object.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace polyuni
