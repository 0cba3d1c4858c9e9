#pragma once

#include <stdexcept>
#include <string>

namespace nsrl {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A model or run-time invariant does not hold (bad probability row,
/// reward out of range, online regret-accounting failure, ...).
class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

/// An iterative solver exceeded its iteration cap. Carries the last
/// stopping metric for diagnosis.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_metric)
        : Error(what), last_metric_(last_metric) {}
    double last_metric() const { return last_metric_; }

private:
    double last_metric_;
};

/// Caller broke the act/observe alternation of an agent.
class ProtocolError : public Error {
public:
    explicit ProtocolError(const std::string& what) : Error(what) {}
};

/// A condition that should be unreachable; indicates a bug, not bad input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(what) {}
};

} // namespace nsrl
