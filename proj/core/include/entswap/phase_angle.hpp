#pragma once

#include <numbers>

namespace entswap {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

/// The parameter theta of cos(theta)|HH> + sin(theta)|VV>, strictly inside
/// (0, pi/2). Construction throws DomainError at or beyond the endpoints.
class PhaseAngle {
public:
    explicit PhaseAngle(double radians);

    double radians() const noexcept { return radians_; }
    double cos() const noexcept { return cos_; }
    double sin() const noexcept { return sin_; }

    /// True when `radians` would construct without throwing.
    static bool in_range(double radians) noexcept;

    friend bool operator==(const PhaseAngle&, const PhaseAngle&) = default;

private:
    double radians_;
    double cos_;
    double sin_;
};

/// Absolute-tolerance comparison in radians.
bool angles_match(PhaseAngle a, PhaseAngle b, double tol) noexcept;

}  // namespace entswap
