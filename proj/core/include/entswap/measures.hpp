// Entanglement quantities for two-qubit pure states.
//
// E_S, the entanglement of single-pair purification, is the largest
// probability with which a single pair can be turned into a Bell state by
// local operations and classical communication: twice the square of the
// smaller Schmidt coefficient. It is not additive, and it is kept separate
// from the von Neumann entropy of entanglement.

#pragma once

#include "entswap/phase_angle.hpp"
#include "entswap/qstate.hpp"

namespace entswap {

/// A probability-valued entanglement figure in [0, 1].
class EntanglementValue {
public:
    /// Throws std::invalid_argument outside [0, 1] or for NaN.
    explicit EntanglementValue(double value);

    /// Clamps rounding excursions just outside [0, 1] (up to 1e-12).
    static EntanglementValue from_computed(double value);

    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

EntanglementValue entanglement_es(const TwoQubitState& state);

/// Entropy of the reduced density matrix in bits, with 0 log 0 = 0.
double entropy_of_entanglement(const TwoQubitState& state);

/// E_S within `tol` of 1. Independent of the global-phase convention.
bool is_bell(const TwoQubitState& state, double tol);

/// Bell yield of single-pair local filtering on cos|HH> + sin|VV>:
/// 2 min(cos^2, sin^2).
EntanglementValue procrustean_yield(PhaseAngle theta);

}  // namespace entswap
