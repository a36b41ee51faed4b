#pragma once

#include <stdexcept>
#include <string>

namespace dkp {

// Base for everything the library throws on a violated precondition.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid physical configuration (a <= 0, m <= 0, sigma not +-1, ...).
class InvalidSpec : public Error {
public:
    using Error::Error;
};

// Argument outside the operation's domain (y <= 0, complex xi where a real one
// is required, step too large, border evaluation, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// |E| <= m handed to a scattering-regime operation.
class ThresholdError : public DomainError {
public:
    using DomainError::DomainError;
};

// eta == 0 or xi == 0 exactly; the closed-form amplitudes are singular there.
class DegenerateKinematics : public Error {
public:
    using Error::Error;
};

// Evaluation at (or numerically on top of) a pole of a cross-check formula.
class PoleError : public Error {
public:
    using Error::Error;
};

class IllConditioned : public Error {
public:
    using Error::Error;
};

}  // namespace dkp
