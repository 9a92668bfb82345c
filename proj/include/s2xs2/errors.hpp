#pragma once

#include <stdexcept>
#include <string>

namespace s2xs2 {

/// Invalid argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// A stated precondition of an analyzer was violated by the input.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The first fundamental form degenerated (det g ~ 0), e.g. at a chart pole.
class DegenerateMetricError : public std::runtime_error {
public:
    explicit DegenerateMetricError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical integration left the admissible range.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An iterative solver did not reach its tolerance within the iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A discrete eigenvalue fell inside the guard band around 1; the caller
/// must refine the grid before trusting index counts.
class AmbiguityError : public std::runtime_error {
public:
    explicit AmbiguityError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace s2xs2
