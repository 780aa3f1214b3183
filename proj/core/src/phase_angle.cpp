#include "entswap/phase_angle.hpp"

#include <cmath>
#include <sstream>

#include "entswap/errors.hpp"

namespace entswap {

PhaseAngle::PhaseAngle(double radians)
    : radians_(radians), cos_(std::cos(radians)), sin_(std::sin(radians)) {
    if (!in_range(radians)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "phase angle " << radians << " rad is outside the open interval (0, pi/2)";
        throw DomainError(msg.str());
    }
}

bool PhaseAngle::in_range(double radians) noexcept {
    return std::isfinite(radians) && radians > 0.0 && radians < kHalfPi;
}

bool angles_match(PhaseAngle a, PhaseAngle b, double tol) noexcept {
    return std::abs(a.radians() - b.radians()) <= tol;
}

}  // namespace entswap
