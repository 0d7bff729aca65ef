#pragma once

#include <stdexcept>
#include <string>

namespace tuop {

/// Invalid input: parameter ranges, evaluation on a branch cut, bad degree.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical tolerance could not be met (quadrature, solver, ODE).
class AccuracyError : public std::runtime_error {
public:
    explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tuop
