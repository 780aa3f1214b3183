// Exact state-vector algebra for two- and four-qubit polarization states.
//
// Basis order is fixed to (HH, HV, VH, VV) for two qubits. For four qubits
// the index is b1 b2 b3 b4 read as a binary number with H = 0, V = 1 and
// qubit 1 in the most significant position.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

namespace entswap {

using Amplitude = std::complex<double>;

/// Tolerance on |norm^2 - 1| accepted for states handed to the library.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Projection probabilities below this leave the post-measurement state
/// undefined instead of renormalizing rounding noise.
inline constexpr double kZeroProbability = 1e-15;

/// Amplitudes with magnitude at or below this are skipped when the global
/// phase is fixed.
inline constexpr double kPhaseReferenceFloor = 1e-12;

enum class Polarization : unsigned { H = 0, V = 1 };

class TwoQubitState {
public:
    static constexpr std::size_t kDimension = 4;
    using Amplitudes = std::array<Amplitude, kDimension>;

    /// Validates finiteness and unit norm (within kNormalizationTolerance).
    /// Throws NormalizationError or std::invalid_argument.
    explicit TwoQubitState(const Amplitudes& amplitudes);
    TwoQubitState(Amplitude hh, Amplitude hv, Amplitude vh, Amplitude vv);

    /// Scales an arbitrary nonzero vector to unit norm.
    static TwoQubitState normalized(const Amplitudes& amplitudes);

    /// The product basis state |a b>.
    static TwoQubitState basis(Polarization first, Polarization second);

    const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
    const Amplitude& operator[](std::size_t index) const { return amplitudes_.at(index); }
    const Amplitude& at(Polarization first, Polarization second) const;

    double norm_squared() const noexcept;

private:
    Amplitudes amplitudes_;
};

class FourQubitState {
public:
    static constexpr std::size_t kDimension = 16;
    using Amplitudes = std::array<Amplitude, kDimension>;

    explicit FourQubitState(const Amplitudes& amplitudes);

    const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
    const Amplitude& operator[](std::size_t index) const { return amplitudes_.at(index); }

    double norm_squared() const noexcept;

private:
    Amplitudes amplitudes_;
};

enum class BellLabel : unsigned { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellLabel, 4> kBellLabels{
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

std::string_view to_string(BellLabel label);
std::optional<BellLabel> parse_bell_label(std::string_view name);

/// Schmidt coefficients, lambda1 >= lambda2 >= 0 and lambda1^2 + lambda2^2 = 1.
struct SchmidtPair {
    double lambda1;
    double lambda2;
};

/// Which subsystem sits on the row side of the amplitude matrix.
enum class SchmidtCut { FirstQubit, SecondQubit };

/// Joint state of two pairs; qubits of `a` become 1,2 and of `b` become 3,4.
FourQubitState tensor(const TwoQubitState& a, const TwoQubitState& b);

/// Normalized Bell state with the first nonzero amplitude real positive.
TwoQubitState bell_state(BellLabel label);

/// Qubit positions 1..4 of the pair being measured. The Bell state's first
/// qubit is matched to `first`.
struct QubitPair {
    int first;
    int second;
};

struct BellProjection {
    double probability;
    /// Remaining two qubits in ascending index order; empty when the
    /// probability is below kZeroProbability.
    std::optional<TwoQubitState> post_state;
};

/// Born-rule projection of two qubits of `joint` onto a Bell state.
/// Throws std::invalid_argument for indices outside 1..4 or repeated.
BellProjection project_bell(const FourQubitState& joint, BellLabel onto, QubitPair measured);

/// Singular values of the 2x2 amplitude matrix via the closed-form 2x2 SVD.
SchmidtPair schmidt(const TwoQubitState& state, SchmidtCut cut = SchmidtCut::FirstQubit);

/// <a|b>
Amplitude inner_product(const TwoQubitState& a, const TwoQubitState& b);

/// Multiplies by the global phase that makes the first amplitude with
/// magnitude above kPhaseReferenceFloor real and positive.
TwoQubitState canonical_phase(const TwoQubitState& state);

/// Row-major 2x2 matrix acting on one qubit in the (H, V) basis.
using SingleQubitOperator = std::array<Amplitude, 4>;

/// Applies `op` to one qubit (0 = first, 1 = second). Throws
/// NormalizationError if `op` is not unitary enough to keep the norm.
TwoQubitState apply_local(const TwoQubitState& state, const SingleQubitOperator& op, int qubit);

}  // namespace entswap
