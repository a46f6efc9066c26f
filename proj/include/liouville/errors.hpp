#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

// Base of every error the toolkit raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidFunctionError : public Error {
public:
    using Error::Error;
};

// f has a pole at the requested point.
class PoleError : public Error {
public:
    using Error::Error;
};

// Value left the double range (e.g. e^{e^z} with Re e^z > ~709).
class OverflowError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidConfigError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature gave up. The best estimate so far travels with the error.
class ToleranceNotMetError : public Error {
public:
    ToleranceNotMetError(const std::string& what, double best, double err)
        : Error(what), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

class DivergentIntegralError : public Error {
public:
    DivergentIntegralError(const std::string& what, double partial)
        : Error(what), partial_value(partial) {}
    double partial_value;
};

class NeedsSmoothingError : public Error {
public:
    NeedsSmoothingError(const std::string& what, double where)
        : Error(what), location(where) {}
    double location;
};

class NoCriticalRadiusError : public Error {
public:
    using Error::Error;
};

class BoundNotApplicableError : public Error {
public:
    using Error::Error;
};

class CertificateFailedError : public Error {
public:
    using Error::Error;
};

class InconclusiveError : public Error {
public:
    InconclusiveError(const std::string& what, double best)
        : Error(what), best_found(best) {}
    double best_found;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class InvalidDomainError : public Error {
public:
    using Error::Error;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

}  // namespace liouville
