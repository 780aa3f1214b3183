#include "entswap/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "entswap/errors.hpp"

namespace entswap {
namespace {

SwapOutcome make_outcome(BellLabel label, double probability, const TwoQubitState& post) {
    TwoQubitState canonical = canonical_phase(post);
    const EntanglementValue es = entanglement_es(canonical);
    return {label, probability, std::move(canonical), es};
}

double weighted_mean_es(const std::array<SwapOutcome, 4>& outcomes) {
    double mean = 0.0;
    for (const auto& o : outcomes) mean += o.probability * o.es_after.value();
    return mean;
}

// (a|x> + sign b|y>) normalized, with x, y the basis slots given.
TwoQubitState two_term_state(std::size_t x, std::size_t y, double a, double b, double sign) {
    const double norm = std::hypot(a, b);
    TwoQubitState::Amplitudes amps{};
    amps[x] = a / norm;
    amps[y] = sign * b / norm;
    return TwoQubitState(amps);
}

constexpr std::size_t kHH = 0, kHV = 1, kVH = 2, kVV = 3;

}  // namespace

double SwapResult::total_probability() const {
    double total = 0.0;
    for (const auto& o : outcomes) total += o.probability;
    return total;
}

std::string_view to_string(BsmMode mode) {
    return mode == BsmMode::Full ? "full" : "partial";
}

std::string_view to_string(OutcomeClass cls) {
    switch (cls) {
        case OutcomeClass::PhiPlus: return "PhiPlus";
        case OutcomeClass::PhiMinus: return "PhiMinus";
        case OutcomeClass::PsiPlus: return "PsiPlus";
        case OutcomeClass::PsiMinus: return "PsiMinus";
        case OutcomeClass::UnresolvedPhi: return "UnresolvedPhi";
    }
    return "unknown";
}

OutcomeClass outcome_class(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return OutcomeClass::PhiPlus;
        case BellLabel::PhiMinus: return OutcomeClass::PhiMinus;
        case BellLabel::PsiPlus: return OutcomeClass::PsiPlus;
        case BellLabel::PsiMinus: return OutcomeClass::PsiMinus;
    }
    throw std::invalid_argument("outcome_class: unknown label");
}

TwoQubitState make_phi(PhaseAngle theta) {
    return TwoQubitState(theta.cos(), 0.0, 0.0, theta.sin());
}

PhaseAngle theta_from_absorption(double gamma, double length) {
    if (!std::isfinite(gamma) || !std::isfinite(length) || gamma < 0.0 || length < 0.0) {
        throw std::invalid_argument("theta_from_absorption: gamma and length must be finite and non-negative");
    }
    // sin^2 = 1 / (1 + e^{-2x})  <=>  tan = e^{x}; the arctangent form keeps
    // precision as theta approaches pi/2.
    return PhaseAngle(std::atan(std::exp(gamma * length)));
}

SwapResult swap_closed_form(PhaseAngle theta) {
    const double c2 = theta.cos() * theta.cos();
    const double s2 = theta.sin() * theta.sin();
    const double n = std::sqrt(c2 * c2 + s2 * s2);
    const double p_phi = (c2 * c2 + s2 * s2) / 2.0;
    const double p_psi = c2 * s2;

    SwapResult result{
        {make_outcome(BellLabel::PhiPlus, p_phi, TwoQubitState(c2 / n, 0.0, 0.0, s2 / n)),
         make_outcome(BellLabel::PhiMinus, p_phi, TwoQubitState(c2 / n, 0.0, 0.0, -s2 / n)),
         make_outcome(BellLabel::PsiPlus, p_psi, bell_state(BellLabel::PsiPlus)),
         make_outcome(BellLabel::PsiMinus, p_psi, bell_state(BellLabel::PsiMinus))},
        0.0};
    result.mean_es = weighted_mean_es(result.outcomes);
    return result;
}

SwapResult swap_general(PhaseAngle theta1, PhaseAngle theta2) {
    const double c1 = theta1.cos(), s1 = theta1.sin();
    const double c2 = theta2.cos(), s2 = theta2.sin();

    const double hh = c1 * c2, vv = s1 * s2;
    const double hv = c1 * s2, vh = s1 * c2;
    const double p_phi = (hh * hh + vv * vv) / 2.0;
    const double p_psi = (hv * hv + vh * vh) / 2.0;

    SwapResult result{
        {make_outcome(BellLabel::PhiPlus, p_phi, two_term_state(kHH, kVV, hh, vv, +1.0)),
         make_outcome(BellLabel::PhiMinus, p_phi, two_term_state(kHH, kVV, hh, vv, -1.0)),
         make_outcome(BellLabel::PsiPlus, p_psi, two_term_state(kHV, kVH, hv, vh, +1.0)),
         make_outcome(BellLabel::PsiMinus, p_psi, two_term_state(kHV, kVH, hv, vh, -1.0))},
        0.0};
    result.mean_es = weighted_mean_es(result.outcomes);
    return result;
}

SwapResult swap_oracle(PhaseAngle theta1, PhaseAngle theta2) {
    const FourQubitState joint = tensor(make_phi(theta1), make_phi(theta2));

    auto project = [&](BellLabel label) -> SwapOutcome {
        auto [probability, post] = project_bell(joint, label, QubitPair{2, 3});
        if (!post) return {label, probability, std::nullopt, EntanglementValue(0.0)};
        return make_outcome(label, probability, *post);
    };

    SwapResult result{{project(BellLabel::PhiPlus), project(BellLabel::PhiMinus),
                       project(BellLabel::PsiPlus), project(BellLabel::PsiMinus)},
                      0.0};
    result.mean_es = weighted_mean_es(result.outcomes);
    return result;
}

std::vector<ClassOutcome> apply_bsm_mode(const SwapResult& result, BsmMode mode) {
    std::vector<ClassOutcome> classes;
    if (mode == BsmMode::Full) {
        for (const auto& o : result.outcomes) {
            classes.push_back({outcome_class(o.label), o.probability, o.post_state});
        }
        return classes;
    }
    const auto& psi_plus = result.outcome(BellLabel::PsiPlus);
    const auto& psi_minus = result.outcome(BellLabel::PsiMinus);
    classes.push_back({OutcomeClass::PsiPlus, psi_plus.probability, psi_plus.post_state});
    classes.push_back({OutcomeClass::PsiMinus, psi_minus.probability, psi_minus.post_state});
    classes.push_back({OutcomeClass::UnresolvedPhi,
                       result.outcome(BellLabel::PhiPlus).probability +
                           result.outcome(BellLabel::PhiMinus).probability,
                       std::nullopt});
    return classes;
}

MatchingReport matching_analysis(PhaseAngle theta1, PhaseAngle theta2, double tol) {
    const SwapResult result = swap_general(theta1, theta2);
    const auto& psi_plus = result.outcome(BellLabel::PsiPlus);
    const auto& psi_minus = result.outcome(BellLabel::PsiMinus);
    const bool matched = angles_match(theta1, theta2, tol);
    return {matched, matched ? psi_plus.probability + psi_minus.probability : 0.0,
            psi_plus.es_after.value()};
}

}  // namespace entswap
