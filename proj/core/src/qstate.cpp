#include "entswap/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "entswap/errors.hpp"

namespace entswap {
namespace {

template <std::size_t N>
double sum_norm(const std::array<Amplitude, N>& amps) {
    double total = 0.0;
    for (const auto& a : amps) total += std::norm(a);
    return total;
}

template <std::size_t N>
void validate(const std::array<Amplitude, N>& amps, const char* type_name) {
    for (const auto& a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument(std::string(type_name) + ": non-finite amplitude");
        }
    }
    const double n2 = sum_norm(amps);
    if (std::abs(n2 - 1.0) > kNormalizationTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << type_name << ": state is not normalized (norm^2 = " << n2 << ")";
        throw NormalizationError(msg.str(), n2);
    }
}

constexpr std::size_t two_index(unsigned first, unsigned second) { return 2 * first + second; }

// Qubit 1 is the most significant bit of a four-qubit index.
constexpr std::size_t with_qubit(std::size_t index, int q, unsigned bit) {
    return index | (static_cast<std::size_t>(bit) << (4 - q));
}

}  // namespace

TwoQubitState::TwoQubitState(const Amplitudes& amplitudes) : amplitudes_(amplitudes) {
    validate(amplitudes_, "TwoQubitState");
}

TwoQubitState::TwoQubitState(Amplitude hh, Amplitude hv, Amplitude vh, Amplitude vv)
    : TwoQubitState(Amplitudes{hh, hv, vh, vv}) {}

TwoQubitState TwoQubitState::normalized(const Amplitudes& amplitudes) {
    const double n2 = sum_norm(amplitudes);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw NormalizationError("TwoQubitState: cannot normalize a zero or non-finite vector", n2);
    }
    const double scale = 1.0 / std::sqrt(n2);
    Amplitudes out = amplitudes;
    for (auto& a : out) a *= scale;
    return TwoQubitState(out);
}

TwoQubitState TwoQubitState::basis(Polarization first, Polarization second) {
    Amplitudes amps{};
    amps[two_index(static_cast<unsigned>(first), static_cast<unsigned>(second))] = 1.0;
    return TwoQubitState(amps);
}

const Amplitude& TwoQubitState::at(Polarization first, Polarization second) const {
    return amplitudes_[two_index(static_cast<unsigned>(first), static_cast<unsigned>(second))];
}

double TwoQubitState::norm_squared() const noexcept { return sum_norm(amplitudes_); }

FourQubitState::FourQubitState(const Amplitudes& amplitudes) : amplitudes_(amplitudes) {
    validate(amplitudes_, "FourQubitState");
}

double FourQubitState::norm_squared() const noexcept { return sum_norm(amplitudes_); }

std::string_view to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "PhiPlus";
        case BellLabel::PhiMinus: return "PhiMinus";
        case BellLabel::PsiPlus: return "PsiPlus";
        case BellLabel::PsiMinus: return "PsiMinus";
    }
    return "unknown";
}

std::optional<BellLabel> parse_bell_label(std::string_view name) {
    for (auto label : kBellLabels) {
        if (to_string(label) == name) return label;
    }
    return std::nullopt;
}

FourQubitState tensor(const TwoQubitState& a, const TwoQubitState& b) {
    FourQubitState::Amplitudes joint{};
    for (std::size_t i = 0; i < TwoQubitState::kDimension; ++i) {
        for (std::size_t j = 0; j < TwoQubitState::kDimension; ++j) {
            joint[i * TwoQubitState::kDimension + j] = a[i] * b[j];
        }
    }
    return FourQubitState(joint);
}

TwoQubitState bell_state(BellLabel label) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (label) {
        case BellLabel::PhiPlus: return TwoQubitState(h, 0.0, 0.0, h);
        case BellLabel::PhiMinus: return TwoQubitState(h, 0.0, 0.0, -h);
        case BellLabel::PsiPlus: return TwoQubitState(0.0, h, h, 0.0);
        case BellLabel::PsiMinus: return TwoQubitState(0.0, h, -h, 0.0);
    }
    throw std::invalid_argument("bell_state: unknown label");
}

BellProjection project_bell(const FourQubitState& joint, BellLabel onto, QubitPair measured) {
    const auto in_range = [](int q) { return q >= 1 && q <= 4; };
    if (!in_range(measured.first) || !in_range(measured.second) ||
        measured.first == measured.second) {
        throw std::invalid_argument("project_bell: measured qubits must be two distinct indices in 1..4");
    }

    std::array<int, 2> rest{};
    std::size_t r = 0;
    for (int q = 1; q <= 4; ++q) {
        if (q != measured.first && q != measured.second) rest[r++] = q;
    }

    const TwoQubitState bell = bell_state(onto);
    TwoQubitState::Amplitudes partial{};
    for (unsigned bk = 0; bk < 2; ++bk) {
        for (unsigned bl = 0; bl < 2; ++bl) {
            Amplitude acc = 0.0;
            for (unsigned bi = 0; bi < 2; ++bi) {
                for (unsigned bj = 0; bj < 2; ++bj) {
                    std::size_t idx = 0;
                    idx = with_qubit(idx, measured.first, bi);
                    idx = with_qubit(idx, measured.second, bj);
                    idx = with_qubit(idx, rest[0], bk);
                    idx = with_qubit(idx, rest[1], bl);
                    acc += std::conj(bell[two_index(bi, bj)]) * joint[idx];
                }
            }
            partial[two_index(bk, bl)] = acc;
        }
    }

    const double probability = sum_norm(partial);
    if (probability < kZeroProbability) return {probability, std::nullopt};
    return {probability, TwoQubitState::normalized(partial)};
}

SchmidtPair schmidt(const TwoQubitState& state, SchmidtCut cut) {
    Amplitude m00 = state[0], m01 = state[1], m10 = state[2], m11 = state[3];
    if (cut == SchmidtCut::SecondQubit) std::swap(m01, m10);

    // Squared singular values are the eigenvalues of M M^dagger. Their gap is
    // taken from the entries of M M^dagger directly, since total^2 - 4 det^2
    // cancels catastrophically near maximal entanglement; the smaller value
    // comes from det / lambda1, which keeps relative precision near product
    // states.
    const double row0 = std::norm(m00) + std::norm(m01);
    const double row1 = std::norm(m10) + std::norm(m11);
    const double cross = std::abs(m00 * std::conj(m10) + m01 * std::conj(m11));
    const double total = row0 + row1;
    const double gap = std::hypot(row0 - row1, 2.0 * cross);
    const double det = std::abs(m00 * m11 - m01 * m10);

    const double big = std::sqrt((total + gap) / 2.0);
    const double small = std::min(big, det / big);
    const double scale = 1.0 / std::sqrt(total);
    return {big * scale, small * scale};
}

Amplitude inner_product(const TwoQubitState& a, const TwoQubitState& b) {
    Amplitude acc = 0.0;
    for (std::size_t i = 0; i < TwoQubitState::kDimension; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

TwoQubitState canonical_phase(const TwoQubitState& state) {
    for (const auto& a : state.amplitudes()) {
        const double mag = std::abs(a);
        if (mag > kPhaseReferenceFloor) {
            const Amplitude rotation = std::conj(a) / mag;
            TwoQubitState::Amplitudes out = state.amplitudes();
            for (auto& x : out) x *= rotation;
            return TwoQubitState(out);
        }
    }
    return state;
}

TwoQubitState apply_local(const TwoQubitState& state, const SingleQubitOperator& op, int qubit) {
    if (qubit != 0 && qubit != 1) throw std::invalid_argument("apply_local: qubit must be 0 or 1");
    TwoQubitState::Amplitudes out{};
    for (unsigned a = 0; a < 2; ++a) {
        for (unsigned b = 0; b < 2; ++b) {
            Amplitude acc = 0.0;
            for (unsigned c = 0; c < 2; ++c) {
                acc += qubit == 0 ? op[2 * a + c] * state[two_index(c, b)]
                                  : op[2 * b + c] * state[two_index(a, c)];
            }
            out[two_index(a, b)] = acc;
        }
    }
    return TwoQubitState(out);
}

}  // namespace entswap
