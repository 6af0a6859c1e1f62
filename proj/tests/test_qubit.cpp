#include <gtest/gtest.h>

#include <cmath>

#include "qmb/error.hpp"
#include "qmb/qubit_metrology.hpp"

using namespace qmb::qubit;

TEST(Ramsey, FormulaPoints) {
    EXPECT_DOUBLE_EQ(ramsey_probability(0.0), 1.0);
    EXPECT_NEAR(ramsey_probability(M_PI), 0.0, 1e-16);
    EXPECT_NEAR(ramsey_probability(M_PI / 2), 0.5, 1e-15);
}

TEST(Ghz, ReducesToRamseyForOneQubit) {
    for (double phi = -3.0; phi < 3.0; phi += 0.37) EXPECT_EQ(ghz_probability(1, phi), ramsey_probability(phi));
}

TEST(Ghz, NodeAndRegisterOracle) {
    EXPECT_NEAR(ghz_probability(5, M_PI / 5), 0.0, 1e-15);
    // Brute-force 256-amplitude register.
    EXPECT_NEAR(ghz_probability(8, 0.3), ghz_probability_explicit(8, 0.3), 1e-12);
    for (int n = 1; n <= 12; ++n)
        for (double phi : {0.05, 0.7, 2.0}) EXPECT_NEAR(ghz_probability(n, phi), ghz_probability_explicit(n, phi), 1e-12);
}

TEST(Register, PhaseAndOverlap) {
    const auto g = QubitRegister::ghz(3);
    EXPECT_NEAR(g.norm_squared(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(g.overlap(g)), 1.0, 1e-15);
    auto h = g;
    for (int q = 0; q < 3; ++q) h = h.with_phase(q, 0.4);
    EXPECT_NEAR(std::norm(g.overlap(h)), std::pow(std::cos(3 * 0.4 / 2), 2), 1e-14);
    EXPECT_THROW(QubitRegister(2, {1.0, 0.0, 0.0}), qmb::Error);
    EXPECT_THROW(QubitRegister(1, {1.0, 1.0}), qmb::Error);
}

TEST(PhaseEstimation, ReproducibleUnderPlan) {
    const MonteCarloPlan plan{500, 11, 0.4};
    const auto a = estimate_phase_mc(8, PhaseStrategy::independent, plan);
    const auto b = estimate_phase_mc(8, PhaseStrategy::independent, plan);
    EXPECT_EQ(a.rmse, b.rmse);
    EXPECT_EQ(a.mean_estimate, b.mean_estimate);
}

TEST(PhaseEstimation, StrategiesCoincideAtOneQubit) {
    const MonteCarloPlan plan{800, 5, 0.4};
    const auto a = estimate_phase_mc(1, PhaseStrategy::independent, plan);
    const auto b = estimate_phase_mc(1, PhaseStrategy::ghz, plan);
    EXPECT_EQ(a.rmse, b.rmse);
}

TEST(PhaseEstimation, ErrorPropagationScale) {
    // Independent qubits: RMSE ~ 1 / sqrt(N * repetitions) for a locally unbiased estimator.
    const int n = 64;
    const auto r = estimate_phase_mc(n, PhaseStrategy::independent, {2000, 3, 0.4});
    EXPECT_NEAR(r.rmse * std::sqrt(n * kDefaultRepetitions), 1.0, 0.08);
    EXPECT_FALSE(r.flagged);
    EXPECT_NEAR(r.mean_estimate, 0.4, 4 * r.std_estimate / std::sqrt(2000.0));
}

TEST(PhaseEstimation, DegeneratePointFlagged) {
    const auto r = estimate_phase_mc(4, PhaseStrategy::independent, {100, 1, 0.0});
    EXPECT_TRUE(r.flagged);
}

TEST(PhaseEstimation, GhzScalingSlope) {
    std::vector<double> n, e;
    for (int k : {2, 4, 8, 16, 32, 64}) {
        const auto r = estimate_phase_mc(k, PhaseStrategy::ghz, {2000, 2, default_true_phi(k, PhaseStrategy::ghz)});
        n.push_back(k);
        e.push_back(r.rmse);
    }
    EXPECT_NEAR(qmb::fit_log_log(n, e).exponent, -1.0, 0.07);
}

TEST(FrequencyStandard, ClosedForms) {
    EXPECT_DOUBLE_EQ(frequency_error(100, 1.0, IonStrategy::independent), 0.1);
    EXPECT_DOUBLE_EQ(frequency_error(100, 1.0, IonStrategy::entangled), 0.01);
    EXPECT_EQ(frequency_error(1, 2.0, IonStrategy::independent), frequency_error(1, 2.0, IonStrategy::entangled));
    EXPECT_DOUBLE_EQ(frequency_error(9, 2.0, IonStrategy::independent), frequency_error(9, 1.0, IonStrategy::independent) / 2);
    EXPECT_THROW(frequency_error(0, 1.0, IonStrategy::entangled), qmb::Error);
    EXPECT_THROW(frequency_error(1, 0.0, IonStrategy::entangled), qmb::Error);
}

TEST(Pauli, BellProbeIsPerfect) {
    for (std::uint64_t seed : {0u, 1u, 77u})
        for (const Pauli p : kPaulis) EXPECT_EQ(pauli_discriminate(BellProbe{}, p, {10000, seed, 0.0}), 1.0);
}

TEST(Pauli, ComputationalProbeOracle) {
    // Exhaustive likelihood table: |0> measured in Z sees I,Z -> 0 and X,Y -> 1.
    const SingleProbe z0{{complex{1, 0}, complex{0, 0}}, {{{complex{1, 0}, complex{0, 0}}, {complex{0, 0}, complex{1, 0}}}}};
    EXPECT_NEAR(pauli_success_exact(z0), 0.5, 1e-15);
    EXPECT_LE(pauli_success_exact(z0), 0.75);
    EXPECT_NEAR(pauli_success_uniform(z0, {20000, 4, 0.0}), 0.5, 1e-12);
}

TEST(Pauli, SampledSingleProbesNeverPerfect) {
    qmb::Philox4x32 rng(8, 4);
    double best = 0;
    for (int i = 0; i < 1000; ++i) best = std::max(best, pauli_success_exact(random_single_probe(rng)));
    EXPECT_LE(best, 0.5 + 1e-12);
}
