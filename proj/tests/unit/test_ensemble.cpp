#include <doctest.h>

#include <cmath>
#include <numbers>

#include "brute_force.hpp"
#include "entswap/ensemble.hpp"
#include "entswap/errors.hpp"
#include "entswap/rng.hpp"

using namespace entswap;
namespace bf = entswap::testing;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTight = 1e-12;

double sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace

TEST_CASE("uniform stream is deterministic and in range") {
    UniformStream a(worker_stream_seed(42, 0)), b(worker_stream_seed(42, 0)), c(worker_stream_seed(42, 1));
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.next();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        CHECK(x == b.next());
        differs = differs || x != c.next();
    }
    CHECK(differs);
}

TEST_CASE("sample_swap") {
    SUBCASE("uniform outcomes at pi/4") {
        const auto stats = sample_swap({PhaseAngle(kPi / 4), PhaseAngle(kPi / 4), 100000, 1});
        REQUIRE(stats.classes.size() == 4);
        std::uint64_t total = 0;
        double psum = 0.0;
        for (const auto& c : stats.classes) {
            CHECK(std::abs(c.probability - 0.25) < 5.0 * sigma(0.25, 1e5));
            CHECK(std::abs(c.standard_error - sigma(c.probability, 1e5)) < kTight);
            total += c.count;
            psum += c.probability;
        }
        CHECK(total == 100000);
        CHECK(std::abs(psum - 1.0) < kTight);
        CHECK(stats.bell_fraction == doctest::Approx(1.0));
        CHECK(std::abs(stats.empirical_mean_es - 1.0) < kTight);
    }
    SUBCASE("pi/6 Bell fraction and conservation") {
        const auto stats = sample_swap({PhaseAngle(kPi / 6), PhaseAngle(kPi / 6), 100000, 99});
        CHECK(std::abs(stats.bell_fraction - 0.375) < 5.0 * sigma(0.375, 1e5));
        CHECK(std::abs(stats.empirical_mean_es - 0.5) < 0.01);
    }
    SUBCASE("single pair") {
        const auto stats = sample_swap({PhaseAngle(0.4), PhaseAngle(0.9), 1, 123});
        std::uint64_t total = 0;
        for (const auto& c : stats.classes) {
            CHECK((c.count == 0 || c.count == 1));
            CHECK(c.standard_error == 0.0);
            total += c.count;
        }
        CHECK(total == 1);
    }
    SUBCASE("determinism per seed and worker count") {
        const EnsembleConfig config{PhaseAngle(0.6), PhaseAngle(0.8), 50001, 7, BsmMode::Full, 4};
        const auto a = sample_swap(config);
        const auto b = sample_swap(config);
        CHECK(a.workers == 4);
        for (std::size_t i = 0; i < a.classes.size(); ++i) CHECK(a.classes[i].count == b.classes[i].count);
        CHECK(a.empirical_mean_es == b.empirical_mean_es);

        auto other_seed = config;
        other_seed.seed = 8;
        const auto c = sample_swap(other_seed);
        bool differs = false;
        for (std::size_t i = 0; i < a.classes.size(); ++i) differs = differs || a.classes[i].count != c.classes[i].count;
        CHECK(differs);
    }
    SUBCASE("partial Bell measurement") {
        const auto stats =
            sample_swap({PhaseAngle(kPi / 6), PhaseAngle(kPi / 6), 100000, 5, BsmMode::PartialLinearOptics, 2});
        REQUIRE(stats.classes.size() == 3);
        CHECK(stats.classes[2].cls == OutcomeClass::UnresolvedPhi);
        CHECK(stats.classes[0].count + stats.classes[1].count + stats.classes[2].count == 100000);
        CHECK(std::abs(stats.classes[2].probability - 0.625) < 5.0 * sigma(0.625, 1e5));
        CHECK(std::abs(stats.bell_fraction - 0.375) < 5.0 * sigma(0.375, 1e5));
    }
    SUBCASE("invalid configs") {
        CHECK_THROWS_AS(sample_swap({PhaseAngle(0.5), PhaseAngle(0.5), 0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(sample_swap({PhaseAngle(0.5), PhaseAngle(0.5), 10, 1, BsmMode::Full, 0}),
                        std::invalid_argument);
    }
}

TEST_CASE("sampled probabilities converge across seeds") {
    const double n = 1e5;
    const auto exact = swap_general(PhaseAngle(0.35), PhaseAngle(0.95));
    int excursions = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto stats = sample_swap({PhaseAngle(0.35), PhaseAngle(0.95), 100000, seed});
        for (std::size_t i = 0; i < 4; ++i) {
            const double p = exact.outcomes[i].probability;
            if (std::abs(stats.classes[i].probability - p) > 5.0 * sigma(p, n)) ++excursions;
        }
    }
    CHECK(excursions <= 1);
}

TEST_CASE("residual_angle") {
    CHECK(residual_angle(PhaseAngle(kPi / 4)).radians() == kPi / 4);
    CHECK(std::abs(residual_angle(PhaseAngle(kPi / 6)).radians() - 0.32175055439664219) < kTight);

    for (int i = 1; i < 500; ++i) {
        const double theta = kHalfPi * i / 500.0;
        const double next = residual_angle(PhaseAngle(theta)).radians();
        // tan(next) = tan^2(theta), as the sine of the angle between
        // (cos next, sin next) and (cos^2, sin^2).
        const double c2 = std::pow(std::cos(theta), 2), s2 = std::pow(std::sin(theta), 2);
        CHECK(std::abs(std::sin(next) * c2 - std::cos(next) * s2) / std::hypot(c2, s2) < kTight);
        if (theta < kPi / 4) CHECK(next < theta);
        if (theta > kPi / 4) CHECK(next > theta);
        const double mirrored = residual_angle(PhaseAngle(kHalfPi - theta)).radians();
        CHECK(std::abs(mirrored - (kHalfPi - next)) < kTight);
    }

    // The normalized Phi' outcome of the brute-force projection is make_phi
    // at the residual angle.
    for (double theta : {0.2, kPi / 6, 1.0, 1.4}) {
        const auto phi_prime =
            swap_oracle(PhaseAngle(theta), PhaseAngle(theta)).outcome(BellLabel::PhiPlus).post_state;
        const auto expected = make_phi(residual_angle(PhaseAngle(theta)));
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs((*phi_prime)[k] - expected[k]) < kTight);
    }

    CHECK_THROWS_AS(residual_angle(PhaseAngle(1e-200)), DomainError);
}

TEST_CASE("cascade_exact") {
    SUBCASE("maximal input converts at level 0") {
        const auto report = cascade_exact(PhaseAngle(kPi / 4), 40, 1e-9);
        REQUIRE(report.levels.size() == 1);
        CHECK(report.levels[0].cumulative_bell_fraction == 1.0);
        CHECK(report.converged_at == 0);
    }
    SUBCASE("pi/6 levels frozen from direct iteration") {
        const auto report = cascade_exact(PhaseAngle(kPi / 6), 40, 1e-9);
        const std::array<double, 5> expected{0.375, 0.4875000000000001, 0.49984756097560989, 0.49999997676942654,
                                             0.49999999999999956};
        REQUIRE(report.levels.size() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k) {
            CHECK(std::abs(report.levels[k].cumulative_bell_fraction - expected[k]) < kTight);
            CHECK(std::abs(report.levels[k].cumulative_bell_fraction - bf::cascade_reference(kPi / 6, int(k) + 1)) <
                  kTight);
        }
        CHECK(report.converged_at == 4);
        CHECK(std::abs(report.limit_target - 0.5) < kTight);
    }
    SUBCASE("small angle") {
        const PhaseAngle theta0(1e-3);
        const auto report = cascade_exact(theta0, 40, 1e-9);
        CHECK(std::abs(report.limit_target - 2.0 * std::pow(std::sin(1e-3), 2)) < 1e-18);
        CHECK(std::abs(report.levels.back().cumulative_bell_fraction - report.limit_target) < 1e-9);
        CHECK(report.converged_at.has_value());
    }
    SUBCASE("per-level conservation and bookkeeping") {
        for (double theta0 : {0.07, 0.4, kPi / 6, 0.9, 1.3, 1.5}) {
            const auto report = cascade_exact(PhaseAngle(theta0), 40, 1e-14);
            double previous = 0.0, product = 1.0;
            for (const auto& level : report.levels) {
                CHECK(std::abs(level.conditional_mean_es - procrustean_yield(level.theta)) < kTight);
                product *= 1.0 - level.conditional_yield;
                CHECK(std::abs(level.residual_fraction - product) < kTight);
                CHECK(level.cumulative_bell_fraction >= previous);
                CHECK(level.cumulative_bell_fraction <= report.limit_target + kTight);
                previous = level.cumulative_bell_fraction;
            }
        }
    }
    SUBCASE("invalid level count") {
        CHECK_THROWS_AS(cascade_exact(PhaseAngle(0.5), 0, 1e-9), std::invalid_argument);
    }
}

TEST_CASE("cascade_sampled") {
    SUBCASE("agrees with the exact cascade within binomial bands") {
        const std::uint64_t pairs = 1000000;
        const auto exact = cascade_exact(PhaseAngle(kPi / 6), 10, -1.0);
        const auto sampled = cascade_sampled(PhaseAngle(kPi / 6), pairs, 2718, 10, 4);
        REQUIRE(exact.levels.size() == 10);
        REQUIRE(sampled.levels.size() <= exact.levels.size());
        REQUIRE(!sampled.levels.empty());
        for (std::size_t k = 0; k < sampled.levels.size(); ++k) {
            const double p = exact.levels[k].cumulative_bell_fraction;
            CHECK(std::abs(sampled.levels[k].cumulative_bell_fraction - p) <=
                  5.0 * sigma(p, static_cast<double>(pairs)) + 1e-15);
        }
        CHECK(std::abs(sampled.levels.back().cumulative_bell_fraction - 0.5) < 5.0 * sigma(0.5, 1e6));
        CHECK(sampled.pairs == pairs);
        CHECK(sampled.workers == 4);
        CHECK(sampled.levels[0].entering == pairs);
    }
    SUBCASE("single trajectory") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto report = cascade_sampled(PhaseAngle(kPi / 6), 1, seed, 10);
            const double last = report.levels.back().cumulative_bell_fraction;
            CHECK((last == 0.0 || last == 1.0));
        }
    }
    SUBCASE("same seed, same report") {
        const auto a = cascade_sampled(PhaseAngle(0.3), 20000, 5, 8, 3);
        const auto b = cascade_sampled(PhaseAngle(0.3), 20000, 5, 8, 3);
        REQUIRE(a.levels.size() == b.levels.size());
        for (std::size_t k = 0; k < a.levels.size(); ++k) {
            CHECK(a.levels[k].converted == b.levels[k].converted);
            CHECK(a.levels[k].cumulative_bell_fraction == b.levels[k].cumulative_bell_fraction);
        }
    }
    SUBCASE("maximal input converts every pair") {
        const auto report = cascade_sampled(PhaseAngle(kPi / 4), 1000, 1, 5);
        REQUIRE(report.levels.size() == 1);
        CHECK(report.levels[0].cumulative_bell_fraction == 1.0);
        CHECK(report.converged_at == 0);
    }
}
