#pragma once

#include <stdexcept>
#include <string>

namespace trilin {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad scenario file, missing field, inconsistent dimensions.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// ODE step-size underflow; carries the last time the integrator reached.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& msg, double last_time)
        : Error(msg), last_time(last_time) {}
    double last_time;
};

/// Query outside a transition operator's window (no extrapolation).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Near-singular fundamental matrix at a node.
class ConditioningError : public Error {
public:
    ConditioningError(const std::string& msg, double node_time)
        : Error(msg), node_time(node_time) {}
    double node_time;
};

/// Matrix dimensions do not match.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// No positive decay rate fits the sampled transition norms.
class NotTrichotomicError : public Error {
public:
    NotTrichotomicError(const std::string& msg, double worst_t, double worst_s)
        : Error(msg), worst_t(worst_t), worst_s(worst_s) {}
    double worst_t;
    double worst_s;
};

/// Contraction premise fails; carries the computed constant.
class PremiseViolationError : public Error {
public:
    PremiseViolationError(const std::string& msg, double constant)
        : Error(msg), constant(constant) {}
    double constant;
};

/// Fixed-point sweeps exhausted before the stopping tolerance.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& msg, double last_ratio)
        : Error(msg), last_ratio(last_ratio) {}
    double last_ratio;
};

/// Green kernel queried exactly on the diagonal t = s.
class AmbiguousBranchError : public Error {
public:
    using Error::Error;
};

/// Dichotomy reduction requested with P != I - Q.
class NotReducibleError : public Error {
public:
    using Error::Error;
};

/// Sampled sup of the coefficient norm is not finite.
class EnvelopeFailureError : public Error {
public:
    using Error::Error;
};

/// Sampled projection block norm exceeds the overflow guard.
class UnboundedBlockError : public Error {
public:
    using Error::Error;
};

}  // namespace trilin
