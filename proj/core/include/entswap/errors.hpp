#pragma once

#include <stdexcept>
#include <string>

namespace entswap {

/// Raised when a state vector's squared norm deviates from 1 beyond the
/// input normalization tolerance.
class NormalizationError : public std::invalid_argument {
public:
    NormalizationError(const std::string& what, double norm_squared)
        : std::invalid_argument(what), norm_squared_(norm_squared) {}

    double norm_squared() const noexcept { return norm_squared_; }

private:
    double norm_squared_;
};

/// Raised when a phase angle falls outside the open interval (0, pi/2).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace entswap
