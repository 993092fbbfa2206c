#pragma once

#include <stdexcept>
#include <string>

namespace gkw {

// Invalid argument or operation outside a function's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Bad run configuration (window, layer count, dimension).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A kernel window hit its hard cap before reaching the requested row mass.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double achieved_mass)
        : std::runtime_error(what), achieved_mass_(achieved_mass) {}
    double achieved_mass() const { return achieved_mass_; }

private:
    double achieved_mass_;
};

// Layer magnitudes stopped decaying; usually a window that is too narrow.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative solver did not converge within its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Error bar too large for the quantity being extracted.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two independent evaluations disagree beyond their combined error bounds.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gkw
