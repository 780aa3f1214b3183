#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brute_force.hpp"
#include "entswap/errors.hpp"
#include "entswap/protocol.hpp"
#include "entswap/qstate.hpp"
#include "generators.hpp"

using namespace entswap;
namespace bf = entswap::testing;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTight = 1e-12;

void check_state(const TwoQubitState& s, std::array<double, 4> expected, double tol = kTight) {
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(s[i] - Amplitude(expected[i])) <= tol);
    }
}

}  // namespace

TEST_CASE("TwoQubitState rejects malformed amplitudes") {
    CHECK_THROWS_AS(TwoQubitState(1.0, 1.0, 0.0, 0.0), NormalizationError);
    CHECK_THROWS_AS(TwoQubitState(0.0, 0.0, 0.0, 0.0), NormalizationError);
    CHECK_THROWS_AS(TwoQubitState(std::nan(""), 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_NOTHROW(TwoQubitState(1.0 + 4e-10, 0.0, 0.0, 0.0));

    try {
        TwoQubitState(0.6, 0.6, 0.0, 0.0);
        FAIL("expected NormalizationError");
    } catch (const NormalizationError& e) {
        CHECK(e.norm_squared() == doctest::Approx(0.72));
    }
}

TEST_CASE("tensor") {
    SUBCASE("product basis state") {
        const auto hh = TwoQubitState::basis(Polarization::H, Polarization::H);
        const auto joint = tensor(hh, hh);
        CHECK(joint[0] == Amplitude(1.0));
        for (std::size_t i = 1; i < 16; ++i) CHECK(joint[i] == Amplitude(0.0));
    }
    SUBCASE("maximally entangled pairs") {
        const auto phi = make_phi(PhaseAngle(kPi / 4));
        const auto joint = tensor(phi, phi);
        for (std::size_t i : {0b0000u, 0b0011u, 0b1100u, 0b1111u}) {
            CHECK(std::abs(joint[i] - Amplitude(0.5)) < kTight);
        }
        CHECK(std::abs(joint.norm_squared() - 1.0) < kTight);
    }
    SUBCASE("unequal angles multiply amplitudes") {
        const double t1 = 0.3, t2 = 1.1;
        const auto joint = tensor(make_phi(PhaseAngle(t1)), make_phi(PhaseAngle(t2)));
        const double c1 = std::cos(t1), s1 = std::sin(t1), c2 = std::cos(t2), s2 = std::sin(t2);
        CHECK(std::abs(joint[0b0000] - c1 * c2) < kTight);
        CHECK(std::abs(joint[0b0011] - c1 * s2) < kTight);
        CHECK(std::abs(joint[0b1100] - s1 * c2) < kTight);
        CHECK(std::abs(joint[0b1111] - s1 * s2) < kTight);
    }
}

TEST_CASE("bell_state conventions and orthonormality") {
    const double h = 1.0 / std::sqrt(2.0);
    check_state(bell_state(BellLabel::PhiPlus), {h, 0, 0, h});
    check_state(bell_state(BellLabel::PsiMinus), {0, h, -h, 0});

    for (auto a : kBellLabels) {
        for (auto b : kBellLabels) {
            const Amplitude g = inner_product(bell_state(a), bell_state(b));
            CHECK(std::abs(g - Amplitude(a == b ? 1.0 : 0.0)) < kTight);
        }
        // first nonzero amplitude is real positive
        const auto canonical = canonical_phase(bell_state(a));
        for (std::size_t i = 0; i < 4; ++i) CHECK(canonical[i] == bell_state(a)[i]);
    }
    CHECK(parse_bell_label("PsiPlus") == BellLabel::PsiPlus);
    CHECK_FALSE(parse_bell_label("psi+").has_value());
}

TEST_CASE("project_bell") {
    SUBCASE("standard swapping at maximal entanglement") {
        const auto phi = make_phi(PhaseAngle(kPi / 4));
        const auto [p, post] = project_bell(tensor(phi, phi), BellLabel::PsiPlus, {2, 3});
        CHECK(std::abs(p - 0.25) < kTight);
        REQUIRE(post.has_value());
        CHECK(std::norm(inner_product(*post, bell_state(BellLabel::PsiPlus))) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("orthogonal component has undefined post-state") {
        const auto hh = TwoQubitState::basis(Polarization::H, Polarization::H);
        const auto [p, post] = project_bell(tensor(hh, hh), BellLabel::PsiPlus, {2, 3});
        CHECK(p == 0.0);
        CHECK_FALSE(post.has_value());
    }
    SUBCASE("pi/6 PhiPlus matches the brute-force oracle") {
        // Oracle: 5/16 and (3/4, 1/4) up to normalization.
        const auto phi = make_phi(PhaseAngle(kPi / 6));
        const auto [p, post] = project_bell(tensor(phi, phi), BellLabel::PhiPlus, {2, 3});
        CHECK(std::abs(p - 5.0 / 16.0) < kTight);
        REQUIRE(post.has_value());
        check_state(*post, {3.0 / std::sqrt(10.0), 0, 0, 1.0 / std::sqrt(10.0)});

        const auto ref = bf::project_23(bf::joint_state(bf::phi_vector(kPi / 6), bf::phi_vector(kPi / 6)),
                                        bf::bell_vectors()[0]);
        CHECK(std::abs(p - ref.probability) < kTight);
    }
    SUBCASE("invalid qubit indices") {
        const auto phi = make_phi(PhaseAngle(0.4));
        const auto joint = tensor(phi, phi);
        CHECK_THROWS_AS(project_bell(joint, BellLabel::PhiPlus, {2, 2}), std::invalid_argument);
        CHECK_THROWS_AS(project_bell(joint, BellLabel::PhiPlus, {0, 3}), std::invalid_argument);
        CHECK_THROWS_AS(project_bell(joint, BellLabel::PhiPlus, {1, 5}), std::invalid_argument);
    }
}

TEST_CASE("project_bell completeness and idempotence over random joint states") {
    std::mt19937_64 rng(7);
    const std::array<QubitPair, 6> pairs{{{1, 2}, {2, 3}, {3, 4}, {1, 4}, {4, 2}, {3, 1}}};
    for (int trial = 0; trial < 200; ++trial) {
        const auto joint = tensor(bf::random_state(rng), bf::random_state(rng));
        for (const auto& pair : pairs) {
            double total = 0.0;
            for (auto label : kBellLabels) {
                const auto proj = project_bell(joint, label, pair);
                total += proj.probability;
                if (proj.post_state) CHECK(std::abs(proj.post_state->norm_squared() - 1.0) < kTight);
            }
            CHECK(std::abs(total - 1.0) < kTight);
        }
    }

    // Re-embedding a Bell state on the measured pair reproduces it with certainty.
    for (int trial = 0; trial < 50; ++trial) {
        const auto other = bf::random_state(rng);
        for (auto label : kBellLabels) {
            const auto joint = tensor(bell_state(label), other);
            const auto proj = project_bell(joint, label, {1, 2});
            CHECK(std::abs(proj.probability - 1.0) < kTight);
            REQUIRE(proj.post_state.has_value());
            CHECK(std::abs(std::norm(inner_product(*proj.post_state, other)) - 1.0) < kTight);
        }
    }
}

TEST_CASE("schmidt") {
    SUBCASE("phi states") {
        for (double theta : {0.1, kPi / 6, kPi / 4, kPi / 3, 1.4}) {
            const auto [l1, l2] = schmidt(make_phi(PhaseAngle(theta)));
            CHECK(std::abs(l1 - std::max(std::cos(theta), std::sin(theta))) < kTight);
            CHECK(std::abs(l2 - std::min(std::cos(theta), std::sin(theta))) < kTight);
        }
    }
    SUBCASE("Bell states are maximal") {
        for (auto label : kBellLabels) {
            const auto [l1, l2] = schmidt(bell_state(label));
            CHECK(std::abs(l1 - std::sqrt(0.5)) < kTight);
            CHECK(std::abs(l2 - std::sqrt(0.5)) < kTight);
        }
    }
    SUBCASE("product state") {
        const auto [l1, l2] = schmidt(TwoQubitState::basis(Polarization::H, Polarization::V));
        CHECK(l1 == 1.0);
        CHECK(l2 == 0.0);
    }
}

TEST_CASE("schmidt invariants over random states") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const auto state = bf::random_state(rng);
        const auto first = schmidt(state, SchmidtCut::FirstQubit);
        const auto second = schmidt(state, SchmidtCut::SecondQubit);
        CHECK(first.lambda1 >= first.lambda2);
        CHECK(first.lambda2 >= 0.0);
        CHECK(std::abs(first.lambda1 * first.lambda1 + first.lambda2 * first.lambda2 - 1.0) < kTight);
        CHECK(std::abs(first.lambda1 - second.lambda1) < kTight);
        CHECK(std::abs(first.lambda2 - second.lambda2) < kTight);

        // Agrees with the reduced-density-matrix eigenvalue.
        bf::Vec4 raw{};
        for (std::size_t i = 0; i < 4; ++i) raw[i] = state[i];
        CHECK(std::abs(first.lambda2 * first.lambda2 - bf::reduced_min_eigenvalue(raw)) < kTight);

        const auto u = bf::random_unitary(rng);
        for (int qubit : {0, 1}) {
            const auto rotated = schmidt(apply_local(state, u, qubit));
            CHECK(std::abs(rotated.lambda1 - first.lambda1) < kTight);
            CHECK(std::abs(rotated.lambda2 - first.lambda2) < kTight);
        }
    }
}

TEST_CASE("apply_local rejects bad inputs") {
    const auto state = bell_state(BellLabel::PhiPlus);
    const SingleQubitOperator doubling{2.0, 0.0, 0.0, 2.0};
    CHECK_THROWS_AS(apply_local(state, doubling, 0), NormalizationError);
    const SingleQubitOperator identity{1.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(apply_local(state, identity, 2), std::invalid_argument);
}
