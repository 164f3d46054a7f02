#pragma once

#include <stdexcept>
#include <string>

namespace itm {

/// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument or configuration was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Errors raised while marching an IVP; they remember where it happened.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double eta) : Error(what), eta_(eta) {}
    double eta() const noexcept { return eta_; }

private:
    double eta_;
};

/// Right-hand side or state became non-finite.
class BlowUpError : public IntegrationError {
public:
    using IntegrationError::IntegrationError;
};

/// Adaptive control asked for a step below StepControl::min_step.
class StepUnderflowError : public IntegrationError {
public:
    using IntegrationError::IntegrationError;
};

/// StepControl::max_steps (or the fixed-step budget) exhausted.
class StepLimitError : public IntegrationError {
public:
    using IntegrationError::IntegrationError;
};

/// far_slope + sqrt(h*) <= 0, so the group parameter is not real.
class DegenerateFarFieldError : public Error {
public:
    using Error::Error;
};

}  // namespace itm
