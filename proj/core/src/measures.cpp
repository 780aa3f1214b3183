#include "entswap/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace entswap {
namespace {

constexpr double kClampSlack = 1e-12;

double binary_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

EntanglementValue::EntanglementValue(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument("EntanglementValue must lie in [0, 1], got " + std::to_string(value));
    }
}

EntanglementValue EntanglementValue::from_computed(double value) {
    if (value < 0.0 && value >= -kClampSlack) value = 0.0;
    if (value > 1.0 && value <= 1.0 + kClampSlack) value = 1.0;
    return EntanglementValue(value);
}

EntanglementValue entanglement_es(const TwoQubitState& state) {
    const double lambda2 = schmidt(state).lambda2;
    return EntanglementValue::from_computed(2.0 * lambda2 * lambda2);
}

double entropy_of_entanglement(const TwoQubitState& state) {
    const auto [l1, l2] = schmidt(state);
    const double h = binary_term(l1 * l1) + binary_term(l2 * l2);
    return std::clamp(h, 0.0, 1.0);
}

bool is_bell(const TwoQubitState& state, double tol) {
    return entanglement_es(state).value() >= 1.0 - tol;
}

EntanglementValue procrustean_yield(PhaseAngle theta) {
    const double c2 = theta.cos() * theta.cos();
    const double s2 = theta.sin() * theta.sin();
    return EntanglementValue::from_computed(2.0 * std::min(c2, s2));
}

}  // namespace entswap
