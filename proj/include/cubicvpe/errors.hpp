#pragma once

#include <stdexcept>
#include <string>

namespace cubicvpe {

/// Precondition of an operation was not met by the caller.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a closed-form expression.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or jet was expanded around a point where it is not analytic
/// (zero leading coefficient under a reciprocal or a fractional power).
class SingularExpansion : public std::runtime_error {
public:
    explicit SingularExpansion(std::string tag)
        : std::runtime_error("singular expansion at '" + tag + "'"), tag_(std::move(tag)) {}

    const std::string& tag() const noexcept { return tag_; }

private:
    std::string tag_;
};

/// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cubicvpe
