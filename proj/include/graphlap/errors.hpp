#ifndef GRAPHLAP_ERRORS_HPP
#define GRAPHLAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace graphlap {

enum class ErrorCode {
    // graph-core
    SelfLoop,
    NonPositiveWeight,
    DuplicateEdge,
    UnknownVertex,
    BadParameter,
    OverlappingCircles,
    NegativeFunction,
    // bundle
    AsymmetricTheta,
    NonHermitian,
    // operator-engine
    DimensionMismatch,
    ValidationFailure,
    AlignmentViolated,
    NotSubsolution,
    AlphaTooSmall,
    ConvergenceFailure,
    NegativeWeight,
    // metric-engine
    SigmaEdgeMismatch,
    IsolatedEndpoint,
    MissingCoordinate,
    NegativeDistance,
    NonPositiveD,
    NotInjective,
    // form-lab
    EmptySubset,
    SolveFailure,
    NotExcessive,
    NegativeH,
    NegativeF,
    InvalidPath,
    ZeroDegree,
    SupportViolation,
    // cli
    UnknownExample,
    BadInput,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a machine-readable code; the CLI maps these to exit
/// status 2 (validation) or 3 (numerical).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// True for failures of a numerical procedure (as opposed to invalid input).
    bool numerical() const noexcept {
        return code_ == ErrorCode::ConvergenceFailure || code_ == ErrorCode::SolveFailure;
    }

private:
    ErrorCode code_;
};

} // namespace graphlap

#endif
