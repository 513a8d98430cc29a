#pragma once

#include <stdexcept>
#include <string>

namespace dsym {

struct DiracError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepFailure : DiracError { using DiracError::DiracError; };
struct SuperluminalInput : DiracError { using DiracError::DiracError; };
struct SolvabilityViolation : DiracError {
    double norm_plus, norm_minus;
    SolvabilityViolation(double np, double nm)
        : DiracError("commutator equation not solvable: |p+Zp+| = " + std::to_string(np) +
                     ", |p-Zp-| = " + std::to_string(nm)),
          norm_plus(np), norm_minus(nm) {}
};
struct CommutationViolation : DiracError { using DiracError::DiracError; };
struct ZeroMomentum : DiracError { using DiracError::DiracError; };
struct ZeroLambda : DiracError { using DiracError::DiracError; };
struct ZeroMu : DiracError { using DiracError::DiracError; };
struct GridError : DiracError { using DiracError::DiracError; };
struct QuadratureFailure : DiracError {
    double error_estimate;
    QuadratureFailure(const std::string& what, double err) : DiracError(what), error_estimate(err) {}
};
struct ConfigError : DiracError { using DiracError::DiracError; };
struct IoError : DiracError { using DiracError::DiracError; };

}  // namespace dsym
