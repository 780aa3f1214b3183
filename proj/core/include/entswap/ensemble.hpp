// Ensemble-level simulation of swap purification: seeded Monte Carlo
// sampling of single swaps, and the repeated-purification cascade in which
// the less-entangled Phi' pairs are fed back through another swap with a
// purifier matched to their residual angle.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entswap/phase_angle.hpp"
#include "entswap/protocol.hpp"

namespace entswap {

/// is_bell tolerance used to decide which swap outcomes count as converted.
inline constexpr double kBellClassificationTolerance = 1e-12;

struct EnsembleConfig {
    PhaseAngle theta1;
    PhaseAngle theta2;
    std::uint64_t pairs = 1;
    std::uint64_t seed = 0;
    BsmMode bsm_mode = BsmMode::Full;
    unsigned workers = 1;
};

struct ClassTally {
    OutcomeClass cls;
    std::uint64_t count;
    double probability;     ///< empirical
    double standard_error;  ///< sqrt(p (1 - p) / n)
};

struct EnsembleStats {
    std::vector<ClassTally> classes;  ///< apply_bsm_mode order
    double empirical_mean_es;
    /// Fraction of pairs heralded into a class whose post-state is a Bell state.
    double bell_fraction;
    std::uint64_t pairs;
    unsigned workers;
};

/// Draws `pairs` independent swap outcomes. Work is split into `workers`
/// contiguous shards, each with its own stream; a fixed (seed, workers)
/// gives bit-identical stats. Throws std::invalid_argument when pairs or
/// workers is zero.
EnsembleStats sample_swap(const EnsembleConfig& config);

/// theta' with tan(theta') = tan^2(theta): the angle of the normalized Phi'
/// outcome. Throws DomainError if theta' is not representable inside (0, pi/2).
PhaseAngle residual_angle(PhaseAngle theta);

struct CascadeLevel {
    int level;
    PhaseAngle theta;  ///< residual angle entering this level
    double conditional_yield;    ///< Bell fraction among pairs entering the level
    double conditional_mean_es;  ///< mean E_S of this level's outcomes
    double bell_yield_this_level;  ///< fraction of the original ensemble converted here
    double residual_fraction;      ///< fraction still unconverted after this level
    double cumulative_bell_fraction;
    std::uint64_t entering = 0;   ///< sampled runs only
    std::uint64_t converted = 0;  ///< sampled runs only
};

struct CascadeReport {
    std::vector<CascadeLevel> levels;
    double limit_target;  ///< 2 min(cos^2 theta0, sin^2 theta0)
    std::optional<int> converged_at;
    std::uint64_t pairs = 0;  ///< 0 for the exact recursion
    unsigned workers = 0;
};

/// Exact recursion with matched purifiers and a complete Bell measurement at
/// every level. Stops after `max_levels`, once limit_target minus the
/// cumulative fraction drops below `tol`, or when the residual angle is no
/// longer representable; a negative `tol` runs every level. Throws
/// std::invalid_argument when max_levels < 1.
CascadeReport cascade_exact(PhaseAngle theta0, int max_levels, double tol);

/// Finite-ensemble realization of the cascade: every unconverted pair draws
/// its own outcome at each level. Deterministic for fixed (seed, workers).
CascadeReport cascade_sampled(PhaseAngle theta0, std::uint64_t pairs, std::uint64_t seed,
                              int max_levels, unsigned workers = 1);

}  // namespace entswap
