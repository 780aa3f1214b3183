#include "entswap/ensemble.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "entswap/errors.hpp"
#include "entswap/rng.hpp"

namespace entswap {
namespace {

using OutcomeCounts = std::array<std::uint64_t, 4>;

// Sampling table for one swap: cumulative probabilities in kBellLabels order.
struct OutcomeTable {
    std::array<double, 4> probability{};
    std::array<double, 4> cumulative{};
    std::array<double, 4> es{};
    std::array<bool, 4> bell{};

    explicit OutcomeTable(const SwapResult& result) {
        double running = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto& o = result.outcomes[i];
            probability[i] = o.probability;
            running += o.probability;
            cumulative[i] = running;
            es[i] = o.es_after.value();
            bell[i] = o.post_state && is_bell(*o.post_state, kBellClassificationTolerance);
        }
    }

    std::size_t draw(UniformStream& stream) const noexcept {
        const double u = stream.next();
        for (std::size_t i = 0; i < 3; ++i) {
            if (u < cumulative[i]) return i;
        }
        return 3;
    }
};

std::uint64_t shard_size(std::uint64_t pairs, unsigned workers, unsigned worker) {
    return pairs / workers + (worker < pairs % workers ? 1 : 0);
}

// Runs fn(worker) for every worker, on separate threads when there is more
// than one. Each call writes only to its own slot.
template <typename Fn>
void for_each_worker(unsigned workers, Fn&& fn) {
    if (workers == 1) {
        fn(0U);
        return;
    }
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back([&fn, w] { fn(w); });
}

double residual_radians(PhaseAngle theta) {
    const double offset = theta.radians() - kQuarterPi;
    // Near pi/4 the offset form is exact at the fixed point; away from it
    // atan2 keeps relative precision for angles close to 0 or pi/2.
    if (std::abs(offset) < kQuarterPi / 2.0) return kQuarterPi + std::atan(std::sin(2.0 * offset));
    return std::atan2(theta.sin() * theta.sin(), theta.cos() * theta.cos());
}

double standard_error(double p, std::uint64_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

EnsembleStats sample_swap(const EnsembleConfig& config) {
    if (config.pairs == 0) throw std::invalid_argument("sample_swap: pairs must be at least 1");
    if (config.workers == 0) throw std::invalid_argument("sample_swap: workers must be at least 1");

    const SwapResult exact = swap_general(config.theta1, config.theta2);
    const OutcomeTable table(exact);

    std::vector<OutcomeCounts> shard_counts(config.workers, OutcomeCounts{});
    for_each_worker(config.workers, [&](unsigned w) {
        UniformStream stream(worker_stream_seed(config.seed, w));
        OutcomeCounts& counts = shard_counts[w];
        const std::uint64_t n = shard_size(config.pairs, config.workers, w);
        for (std::uint64_t i = 0; i < n; ++i) ++counts[table.draw(stream)];
    });

    OutcomeCounts counts{};
    for (const auto& shard : shard_counts) {
        for (std::size_t i = 0; i < 4; ++i) counts[i] += shard[i];
    }

    const auto n = static_cast<double>(config.pairs);
    double es_total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) es_total += static_cast<double>(counts[i]) * table.es[i];

    EnsembleStats stats{{}, es_total / n, 0.0, config.pairs, config.workers};
    auto add_class = [&](OutcomeClass cls, std::uint64_t count, bool heralded_bell) {
        const double p = static_cast<double>(count) / n;
        stats.classes.push_back({cls, count, p, standard_error(p, config.pairs)});
        if (heralded_bell) stats.bell_fraction += p;
    };

    if (config.bsm_mode == BsmMode::Full) {
        for (std::size_t i = 0; i < 4; ++i) add_class(outcome_class(kBellLabels[i]), counts[i], table.bell[i]);
    } else {
        constexpr auto kPsiPlus = static_cast<std::size_t>(BellLabel::PsiPlus);
        constexpr auto kPsiMinus = static_cast<std::size_t>(BellLabel::PsiMinus);
        constexpr auto kPhiPlus = static_cast<std::size_t>(BellLabel::PhiPlus);
        constexpr auto kPhiMinus = static_cast<std::size_t>(BellLabel::PhiMinus);
        add_class(OutcomeClass::PsiPlus, counts[kPsiPlus], table.bell[kPsiPlus]);
        add_class(OutcomeClass::PsiMinus, counts[kPsiMinus], table.bell[kPsiMinus]);
        add_class(OutcomeClass::UnresolvedPhi, counts[kPhiPlus] + counts[kPhiMinus], false);
    }
    return stats;
}

PhaseAngle residual_angle(PhaseAngle theta) { return PhaseAngle(residual_radians(theta)); }

CascadeReport cascade_exact(PhaseAngle theta0, int max_levels, double tol) {
    if (max_levels < 1) throw std::invalid_argument("cascade_exact: max_levels must be at least 1");

    CascadeReport report{{}, procrustean_yield(theta0).value(), std::nullopt, 0, 1};
    PhaseAngle theta = theta0;
    double remaining = 1.0;
    double cumulative = 0.0;

    for (int level = 0; level < max_levels; ++level) {
        // The Phi'- branch differs from Phi'+ by a local phase flip, so both
        // continue at the same residual angle.
        const SwapResult swap = swap_closed_form(theta);
        const OutcomeTable table(swap);
        double conditional = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            if (table.bell[i]) conditional += table.probability[i];
        }

        const double converted = remaining * conditional;
        cumulative += converted;
        remaining *= 1.0 - conditional;
        report.levels.push_back(
            {level, theta, conditional, swap.mean_es, converted, remaining, cumulative});

        if (report.limit_target - cumulative < tol) {
            report.converged_at = level;
            break;
        }
        const double next = residual_radians(theta);
        if (remaining <= 0.0 || !PhaseAngle::in_range(next)) break;
        theta = PhaseAngle(next);
    }
    return report;
}

CascadeReport cascade_sampled(PhaseAngle theta0, std::uint64_t pairs, std::uint64_t seed,
                              int max_levels, unsigned workers) {
    if (pairs == 0) throw std::invalid_argument("cascade_sampled: pairs must be at least 1");
    if (workers == 0) throw std::invalid_argument("cascade_sampled: workers must be at least 1");
    if (max_levels < 1) throw std::invalid_argument("cascade_sampled: max_levels must be at least 1");

    std::vector<PhaseAngle> angles{theta0};
    std::vector<OutcomeTable> tables;
    for (int level = 0; level < max_levels; ++level) {
        tables.emplace_back(swap_closed_form(angles.back()));
        if (level + 1 == max_levels) break;
        const double next = residual_radians(angles.back());
        if (!PhaseAngle::in_range(next)) break;
        angles.emplace_back(next);
    }
    const std::size_t planned = tables.size();

    // shard_counts[w][level] = per-outcome tallies of pairs entering that level
    std::vector<std::vector<OutcomeCounts>> shard_counts(
        workers, std::vector<OutcomeCounts>(planned, OutcomeCounts{}));
    for_each_worker(workers, [&](unsigned w) {
        UniformStream stream(worker_stream_seed(seed, w));
        std::uint64_t active = shard_size(pairs, workers, w);
        for (std::size_t level = 0; level < planned && active > 0; ++level) {
            const OutcomeTable& table = tables[level];
            OutcomeCounts& counts = shard_counts[w][level];
            std::uint64_t still_active = 0;
            for (std::uint64_t i = 0; i < active; ++i) {
                const std::size_t outcome = table.draw(stream);
                ++counts[outcome];
                if (!table.bell[outcome]) ++still_active;
            }
            active = still_active;
        }
    });

    CascadeReport report{{}, procrustean_yield(theta0).value(), std::nullopt, pairs, workers};
    const auto n = static_cast<double>(pairs);
    std::uint64_t converted_total = 0;
    for (std::size_t level = 0; level < planned; ++level) {
        OutcomeCounts counts{};
        for (const auto& shard : shard_counts) {
            for (std::size_t i = 0; i < 4; ++i) counts[i] += shard[level][i];
        }
        std::uint64_t entering = 0, converted = 0;
        double es_total = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            entering += counts[i];
            if (tables[level].bell[i]) converted += counts[i];
            es_total += static_cast<double>(counts[i]) * tables[level].es[i];
        }
        if (entering == 0) break;
        converted_total += converted;

        const auto entering_d = static_cast<double>(entering);
        report.levels.push_back({static_cast<int>(level), angles[level],
                                 static_cast<double>(converted) / entering_d, es_total / entering_d,
                                 static_cast<double>(converted) / n,
                                 static_cast<double>(pairs - converted_total) / n,
                                 static_cast<double>(converted_total) / n, entering, converted});
        if (converted_total == pairs) {
            report.converged_at = static_cast<int>(level);
            break;
        }
    }
    return report;
}

}  // namespace entswap
