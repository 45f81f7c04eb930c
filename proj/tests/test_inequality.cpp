#include <cmath>

#include <doctest.h>

#include "cvbell/inequality.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace cvbell;
using test_support::random_amplitudes;
using test_support::random_diagonal_state;
using test_support::random_mixed_state;
using test_support::random_pure_state;

namespace {

QuantumState bell_state() {
    ModeSystem system({2, 2});
    CVector amps(4);
    amps << 0.0, 1.0, 1.0, 0.0;
    return QuantumState::pure(system, amps);
}

QuantumState basis_state(const ModeSystem& system, int index) {
    CVector amps = CVector::Zero(system.total_dim());
    amps(index) = 1.0;
    return QuantumState::pure(system, amps);
}

}  // namespace

TEST_SUITE("inequality") {

TEST_CASE("correlators of the standard states") {
    const ModeSystem two({2, 2});

    SUBCASE("vacuum") {
        const CorrelatorSet cs = correlator_set(basis_state(two, 0), 1);
        CHECK(std::abs(cs.xx) < 1e-12);
        CHECK(std::abs(cs.yy) < 1e-12);
        CHECK(std::abs(cs.xy) < 1e-12);
        CHECK(std::abs(cs.yx) < 1e-12);
        CHECK(std::abs(cs.n1n2) < 1e-12);
        CHECK(std::abs(cs.n1) < 1e-12);
        CHECK(std::abs(cs.n2) < 1e-12);
        CHECK(std::abs(cs.s1 - 0.5) < 1e-12);
        CHECK(std::abs(cs.s2 - 0.5) < 1e-12);
        CHECK(std::abs(cs.s1s2 - 0.25) < 1e-12);
    }

    SUBCASE("single photon shared between the modes") {
        const CorrelatorSet cs = correlator_set(bell_state(), 1);
        CHECK(std::abs(cs.xx - 0.25) < 1e-12);
        CHECK(std::abs(cs.yy - 0.25) < 1e-12);
        CHECK(std::abs(cs.xy) < 1e-12);
        CHECK(std::abs(cs.yx) < 1e-12);
        CHECK(std::abs(cs.n1n2) < 1e-12);
        CHECK(std::abs(cs.n1 - 0.5) < 1e-12);
        CHECK(std::abs(cs.n2 - 0.5) < 1e-12);
        CHECK(std::abs(cs.s1 - 1.0) < 1e-12);
        CHECK(std::abs(cs.s2 - 1.0) < 1e-12);
        CHECK(std::abs(cs.s1s2 - 0.75) < 1e-12);
    }

    SUBCASE("|11>") {
        const CorrelatorSet cs = correlator_set(basis_state(two, 3), 1);
        CHECK(std::abs(cs.xx) < 1e-12);
        CHECK(std::abs(cs.yy) < 1e-12);
        CHECK(std::abs(cs.xy) < 1e-12);
        CHECK(std::abs(cs.yx) < 1e-12);
        CHECK(std::abs(cs.n1n2 - 1.0) < 1e-12);
        CHECK(std::abs(cs.n1 - 1.0) < 1e-12);
        CHECK(std::abs(cs.n2 - 1.0) < 1e-12);
    }

    SUBCASE("argument guards") {
        CHECK_THROWS_AS(correlator_set(basis_state(ModeSystem({4}), 0), 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(correlator_set(bell_state(), 0), std::invalid_argument);
    }
}

TEST_CASE("correlators match the brute-force oracle") {
    Rng rng(19);
    const ModeSystem two({3, 4});
    for (int k : {1, 2}) {
        for (int trial = 0; trial < 10; ++trial) {
            const CVector amps = random_amplitudes(rng, two.total_dim());
            oracle::Vec ref_amp(static_cast<std::size_t>(two.total_dim()));
            for (int i = 0; i < two.total_dim(); ++i) ref_amp[static_cast<std::size_t>(i)] = amps(i);
            const auto ref = oracle::correlators(ref_amp, 3, 4, k);

            const CorrelatorSet cs = correlator_set(QuantumState::pure(two, amps), k);
            CHECK(std::abs(cs.xx - ref.xx) < 1e-10);
            CHECK(std::abs(cs.yy - ref.yy) < 1e-10);
            CHECK(std::abs(cs.xy - ref.xy) < 1e-10);
            CHECK(std::abs(cs.yx - ref.yx) < 1e-10);
            CHECK(std::abs(cs.n1n2 - ref.n1n2) < 1e-10);
            CHECK(std::abs(cs.n1 - ref.n1) < 1e-10);
            CHECK(std::abs(cs.n2 - ref.n2) < 1e-10);
            CHECK(std::abs(cs.s1s2 - ref.s1s2) < 1e-10);
            CHECK(std::abs(cs.s1 - ref.s1) < 1e-10);
            CHECK(std::abs(cs.s2 - ref.s2) < 1e-10);

            const Complex cross = cross_amplitude(QuantumState::pure(two, amps), k);
            CHECK(std::abs(cross - Complex(ref.cross_re, ref.cross_im)) < 1e-10);
        }
    }
}

TEST_CASE("wave LHS from correlators") {
    CorrelatorSet cs;
    cs.xx = cs.yy = cs.xy = cs.yx = 1.0;
    CHECK(wave_lhs(cs) == 4.0);  // the CS counter-model values

    CorrelatorSet zero;
    CHECK(wave_lhs(zero) == 0.0);

    CorrelatorSet photon;
    photon.xx = photon.yy = 0.25;
    CHECK(wave_lhs(photon) == 0.25);
}

TEST_CASE("RHS variants") {
    CorrelatorSet cs;
    cs.n1n2 = 0.0;
    cs.n1 = cs.n2 = 0.5;
    cs.s1s2 = 0.75;
    cs.s1 = cs.s2 = 1.0;
    CHECK(rhs_value(cs, Variant::R1) == 0.0);
    CHECK(rhs_value(cs, Variant::R2) == 0.25);
    CHECK(rhs_value(cs, Variant::R3) == 0.75);
    CHECK(rhs_value(cs, Variant::R4) == 1.0);
    CHECK_THROWS_AS(rhs_value(cs, static_cast<Variant>(9)), std::invalid_argument);
}

TEST_CASE("variant names") {
    CHECK(std::string(variant_name(Variant::R3)) == "R3");
    CHECK(parse_variant("r2") == Variant::R2);
    CHECK_THROWS_AS(parse_variant("R9"), std::invalid_argument);
}

TEST_CASE("evaluating the standard states") {
    SUBCASE("single photon violates R1 only") {
        const InequalityReport report = evaluate(bell_state(), 1);
        CHECK(std::abs(report.lhs - 0.25) < 1e-12);
        CHECK(std::abs(report.rhs_of(Variant::R1)) < 1e-12);
        CHECK(report.violated_of(Variant::R1));
        CHECK(std::abs(report.margin_of(Variant::R1) - 0.25) < 1e-12);
        CHECK(std::abs(report.rhs_of(Variant::R3) - 0.75) < 1e-12);
        CHECK(std::abs(report.rhs_of(Variant::R4) - 1.0) < 1e-12);
        CHECK_FALSE(report.violated_of(Variant::R3));
        CHECK_FALSE(report.violated_of(Variant::R4));
        CHECK(report.requested_of(Variant::R1));
        CHECK_FALSE(report.requested_of(Variant::R2));
    }

    SUBCASE("vacuum satisfies everything") {
        const InequalityReport report =
            evaluate(basis_state(ModeSystem({2, 2}), 0), 1);
        CHECK(report.lhs == 0.0);
        for (Variant v : kAllVariants) CHECK_FALSE(report.violated_of(v));
    }

    SUBCASE("two-mode squeezed vacuum does not violate") {
        const ModeSystem sys({20, 20});
        const InequalityReport report = evaluate(tmsv_state(sys, 0.5), 1);
        CHECK(report.lhs < 1e-10);
        for (Variant v : kAllVariants) CHECK_FALSE(report.violated_of(v));
    }
}

TEST_CASE("LHS identity against the cross amplitude") {
    CHECK(lhs_identity_check(basis_state(ModeSystem({2, 2}), 0), 1) < 1e-15);
    CHECK(lhs_identity_check(bell_state(), 1) < 1e-12);

    Rng rng(23);
    const ModeSystem two({4, 4});
    for (int k : {1, 2}) {
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const QuantumState state = (trial % 2 == 0)
                                           ? random_mixed_state(rng, two)
                                           : random_pure_state(rng, two);
            worst = std::max(worst, lhs_identity_check(state, k));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("states diagonal in the Fock basis satisfy every variant") {
    Rng rng(31);
    const ModeSystem two({4, 4});
    for (int trial = 0; trial < 30; ++trial) {
        const InequalityReport report = evaluate(random_diagonal_state(rng, two), 1);
        CHECK(report.lhs < 1e-12);
        for (Variant v : kAllVariants) CHECK_FALSE(report.violated_of(v));
    }
}

TEST_CASE("variant ordering for k=1") {
    // S_j = N_j + 1/2 exactly under headroom evaluation, so
    // R3 = R1 + n1/2 + n2/2 + 1/4 and R3 >= R1.
    Rng rng(37);
    const ModeSystem two({4, 4});
    for (int trial = 0; trial < 20; ++trial) {
        const CorrelatorSet cs = correlator_set(random_mixed_state(rng, two), 1);
        CHECK(std::abs(cs.s1 - (cs.n1 + 0.5)) < 1e-9);
        CHECK(std::abs(cs.s2 - (cs.n2 + 0.5)) < 1e-9);
        const double expected_r3 = cs.n1n2 + 0.5 * cs.n1 + 0.5 * cs.n2 + 0.25;
        CHECK(std::abs(cs.s1s2 - expected_r3) < 1e-9);
        CHECK(rhs_value(cs, Variant::R3) >= rhs_value(cs, Variant::R1) - 1e-12);
    }
}

TEST_CASE("detector efficiency cannot flip the R1 verdict") {
    Rng rng(41);
    const ModeSystem two({3, 3});
    for (int trial = 0; trial < 15; ++trial) {
        const QuantumState state =
            (trial == 0) ? bell_state() : random_mixed_state(rng, two);
        const CorrelatorSet base = correlator_set(state, 1);
        const double lhs0 = wave_lhs(base);
        const double rhs0 = rhs_value(base, Variant::R1);

        const double eta1 = rng.uniform(0.05, 1.0);
        const double eta2 = rng.uniform(0.05, 1.0);
        const QuantumState lossy = apply_loss(apply_loss(state, 0, eta1), 1, eta2);
        const CorrelatorSet scaled = correlator_set(lossy, 1);

        CHECK(std::abs(wave_lhs(scaled) - eta1 * eta2 * lhs0) < 1e-9);
        CHECK(std::abs(rhs_value(scaled, Variant::R1) - eta1 * eta2 * rhs0) < 1e-9);
    }
}

}  // TEST_SUITE
