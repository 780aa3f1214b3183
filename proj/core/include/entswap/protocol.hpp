// Purification by entanglement swapping.
//
// Photons (1,2) start in cos t1|HH> + sin t1|VV> and photons (3,4) in
// cos t2|HH> + sin t2|VV>. A Bell measurement on photons 2 and 3 leaves
// photons 1 and 4 in one of four states, indexed by the measured label.

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "entswap/measures.hpp"
#include "entswap/phase_angle.hpp"
#include "entswap/qstate.hpp"

namespace entswap {

struct SwapOutcome {
    BellLabel label;  ///< result of the measurement on photons 2,3
    double probability;
    /// Photons (1,4), phase-canonical. Only empty when `probability` is below
    /// kZeroProbability on the oracle path.
    std::optional<TwoQubitState> post_state;
    EntanglementValue es_after;
};

struct SwapResult {
    /// One entry per BellLabel, in kBellLabels order.
    std::array<SwapOutcome, 4> outcomes;
    double mean_es;

    const SwapOutcome& outcome(BellLabel label) const {
        return outcomes[static_cast<unsigned>(label)];
    }
    double total_probability() const;
};

enum class BsmMode { Full, PartialLinearOptics };

/// Outcome classes a detector can report. PartialLinearOptics merges the two
/// Phi results into UnresolvedPhi.
enum class OutcomeClass { PhiPlus, PhiMinus, PsiPlus, PsiMinus, UnresolvedPhi };

std::string_view to_string(BsmMode mode);
std::string_view to_string(OutcomeClass cls);
OutcomeClass outcome_class(BellLabel label);

struct ClassOutcome {
    OutcomeClass cls;
    double probability;
    std::optional<TwoQubitState> post_state;  ///< empty for UnresolvedPhi
};

struct MatchingReport {
    bool psi_outcomes_are_bell;
    double yield_if_bell;  ///< summed Psi probability when matched, else 0
    double psi_es_after;
};

/// cos(theta)|HH> + sin(theta)|VV>.
TwoQubitState make_phi(PhaseAngle theta);

/// Angle left after a dichroic filter of absorption `gamma` per unit length
/// over `length` acts on |HH> + |VV>: sin(theta) = sqrt(1 / (1 + exp(-2 gamma L))).
/// Throws std::invalid_argument for negative or non-finite inputs and
/// DomainError when theta rounds to pi/2.
PhaseAngle theta_from_absorption(double gamma, double length);

/// Equal-angle swap written directly from the outcome formulas:
/// Phi' states (cos^2|HH> +- sin^2|VV>)/N with probability (cos^4 + sin^4)/2,
/// Psi states with probability cos^2 sin^2.
SwapResult swap_closed_form(PhaseAngle theta);

/// Swap of two pairs with different angles.
SwapResult swap_general(PhaseAngle theta1, PhaseAngle theta2);

/// Same contract as swap_general, computed by projecting the 16-amplitude
/// joint state onto each Bell state of qubits (2,3).
SwapResult swap_oracle(PhaseAngle theta1, PhaseAngle theta2);

std::vector<ClassOutcome> apply_bsm_mode(const SwapResult& result, BsmMode mode);

/// Psi outcomes are Bell states exactly when the two angles coincide;
/// `tol` is an absolute tolerance in radians.
MatchingReport matching_analysis(PhaseAngle theta1, PhaseAngle theta2, double tol);

}  // namespace entswap
