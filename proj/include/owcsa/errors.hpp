#pragma once

#include <stdexcept>
#include <string>

namespace owcsa {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure could not meet its accuracy contract.
/// `estimate` carries the achieved error measure (meaning depends on the thrower).
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}

    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// Malformed or invalid configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace owcsa
