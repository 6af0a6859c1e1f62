#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qmb/error.hpp"
#include "qmb/interferometer.hpp"
#include "qmb/rng.hpp"

using namespace qmb::interferometer;
using qmb::Error;
using qmb::ErrorKind;
using qmb::fock::complex;
using qmb::fock::TwoModeState;

namespace {

TwoModeState random_state(std::uint64_t stream, std::size_t cutoff) {
    qmb::Philox4x32 rng(99, stream);
    std::normal_distribution<double> g;
    const std::size_t side = cutoff + 1;
    std::vector<complex> amps(side * side);
    double norm = 0;
    for (auto& a : amps) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    return TwoModeState(cutoff, amps);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(BeamSplitter, PreservesNormAndPhotonNumber) {
    for (std::uint64_t k = 0; k < 5; ++k) {
        const auto s = random_state(k, 8);
        const auto out = beam_splitter(s);
        EXPECT_NEAR(out.norm_squared(), 1.0, 1e-13);
        EXPECT_NEAR(out.total_number_expectation(), s.total_number_expectation(), 1e-12);
        const auto mz = mach_zehnder(s, 0.37 * k);
        EXPECT_NEAR(mz.norm_squared(), 1.0, 1e-13);
        EXPECT_NEAR(mz.total_number_expectation(), s.total_number_expectation(), 1e-12);
    }
}

TEST(BeamSplitter, SinglePhotonSplitsEvenly) {
    const auto s = beam_splitter(qmb::fock::tensor(qmb::fock::fock_state(1, 1), qmb::fock::fock_state(0, 1)));
    EXPECT_NEAR(std::abs(s.amplitude(1, 0)), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(s.amplitude(0, 1)), 1 / std::sqrt(2.0), 1e-15);
}

TEST(BeamSplitter, HongOuMandel) {
    // |1,1> -> (|2,0> + |0,2>) i / sqrt2: no coincidences.
    const auto s = beam_splitter(qmb::fock::tensor(qmb::fock::fock_state(1, 2), qmb::fock::fock_state(1, 2)));
    EXPECT_NEAR(std::abs(s.amplitude(1, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::norm(s.amplitude(2, 0)), 0.5, 1e-14);
}

TEST(BeamSplitter, StableAtLargePhotonNumbers) {
    const auto twin = qmb::fock::tensor(qmb::fock::fock_state(60, 60), qmb::fock::fock_state(60, 60));
    EXPECT_NEAR(beam_splitter(twin).norm_squared(), 1.0, 1e-12);
}

TEST(MachZehnder, CoherentLightExitsByPhase) {
    const auto in = qmb::fock::tensor(qmb::fock::coherent_state(complex{2.0, 0}, 30), qmb::fock::fock_state(0, 30));
    for (double phi : {0.0, 0.8, 2.0, M_PI}) {
        const auto out = mach_zehnder(in, phi);
        EXPECT_NEAR(out.number_expectation_b() / 4.0, std::pow(std::cos(phi / 2), 2), 1e-9) << phi;
    }
}

TEST(MStatistics, RoutesAgreeOnRandomStates) {
    for (std::uint64_t k = 0; k < 6; ++k) {
        const auto s = random_state(k + 10, 6);
        for (double phi : {0.0, 0.4, 1.3, 2.9, -1.1}) {
            const auto a = m_statistics_input_route(s, phi);
            const auto b = m_statistics_output_route(s, phi);
            EXPECT_LT(rel(a.mean, b.mean), 1e-11);
            EXPECT_LT(rel(a.variance, b.variance), 1e-11);
        }
    }
}

TEST(MStatistics, PeriodicInPhase) {
    const auto s = random_state(3, 5);
    const auto a = m_statistics(s, 0.6), b = m_statistics(s, 0.6 + 2 * M_PI);
    EXPECT_LT(rel(a.mean, b.mean), 1e-12);
    EXPECT_LT(rel(a.variance, b.variance), 1e-12);
}

TEST(MStatistics, EntangledClosedForm) {
    for (int n : {1, 3, 5, 11}) {
        const double np = (n + 1) / 2.0;
        const auto s = entangled_input(n, static_cast<std::size_t>(np));
        for (double phi : {0.0, 0.3, M_PI / 2, 2.2}) {
            const auto m = m_statistics(s, phi);
            EXPECT_LT(rel(m.mean, -np * std::sin(phi)), 1e-12);
            EXPECT_LT(rel(m.variance, std::cos(2 * phi) + np * np * std::sin(phi) * std::sin(phi)), 1e-12);
        }
    }
}

TEST(MStatistics, CoherentClosedForm) {
    const auto s = qmb::fock::tensor(qmb::fock::coherent_state(complex{3.0, 0}, 45), qmb::fock::fock_state(0, 45));
    for (double phi : {0.2, 1.0, 2.5}) {
        const auto m = m_statistics(s, phi);
        EXPECT_NEAR(m.mean, 9.0 * std::cos(phi), 1e-7);
        EXPECT_NEAR(m.variance, 9.0, 1e-6);
    }
}

TEST(PhaseError, CoherentShotNoise) {
    for (int n : {4, 25, 100}) {
        const auto s = qmb::fock::tensor(qmb::fock::coherent_state(complex{std::sqrt(n), 0}, qmb::fock::default_cutoff(n)),
                                         qmb::fock::fock_state(0, qmb::fock::default_cutoff(n)));
        EXPECT_NEAR(phase_error(s, M_PI / 2).delta_phi * std::sqrt(n), 1.0, 1e-8);
    }
}

TEST(PhaseError, SqueezedClosedForm) {
    // coherent amplitude alpha in A, squeezed vacuum r in B, phi = pi/2.
    const double alpha = 3.0, r = 0.6;
    const std::size_t cutoff = std::max<std::size_t>(qmb::fock::default_cutoff(alpha * alpha), qmb::fock::squeezed_cutoff(r));
    const auto s = qmb::fock::tensor(qmb::fock::coherent_state(complex{alpha, 0}, cutoff),
                                     qmb::fock::squeezed_vacuum(r, 0.0, cutoff));
    const double sh2 = std::pow(std::sinh(r), 2);
    const double want = std::sqrt(alpha * alpha * std::exp(-2 * r) + sh2) / std::abs(alpha * alpha - sh2);
    EXPECT_NEAR(phase_error(s, M_PI / 2).delta_phi / want, 1.0, 1e-7);
}

TEST(PhaseError, DegenerateOperatingPoint) {
    const auto s = qmb::fock::tensor(qmb::fock::coherent_state(complex{2.0, 0}, 30), qmb::fock::fock_state(0, 30));
    try {
        phase_error(s, 0.0);
        FAIL() << "expected a degenerate error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate);
    }
}

TEST(EntangledInput, Preconditions) {
    EXPECT_THROW(entangled_input(4, 10), Error);
    try {
        entangled_input(9, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::out_of_range);
    }
}

TEST(Scaling, CoherentSlope) {
    const std::vector<int> ns{4, 16, 64, 256};
    const auto r = scaling_experiment(Strategy::coherent, ns, M_PI / 2);
    EXPECT_NEAR(r.fit.exponent, -0.5, 1e-6);
    ASSERT_EQ(r.rows.size(), 4u);
}

TEST(Scaling, EntangledIsInverseNPlus) {
    const std::vector<int> ns{3, 9, 21, 41};
    const auto r = scaling_experiment(Strategy::entangled, ns, default_operating_phase(Strategy::entangled));
    for (const auto& row : r.rows) {
        const double np = (row.n + 1) / 2.0, phi = row.phi_op;
        const double want = std::sqrt(std::cos(2 * phi) + np * np * std::sin(phi) * std::sin(phi)) / (np * std::cos(phi));
        EXPECT_NEAR(row.delta_phi / want, 1.0, 1e-7);
        EXPECT_NEAR(row.delta_phi * np, 1.0, 1e-3);
    }
}

TEST(Scaling, SqueezedBeatsCoherent) {
    const std::vector<int> ns{16, 32, 64, 160};
    const auto r = scaling_experiment(Strategy::squeezed, ns, M_PI / 2);
    for (const auto& row : r.rows) {
        EXPECT_LT(row.delta_phi, 1 / std::sqrt(row.n));
        EXPECT_GT(row.squeeze_fraction, 0.0);
    }
}

TEST(Scaling, Preconditions) {
    const std::vector<int> few{4, 16, 64}, narrow{4, 5, 6, 7}, unsorted{64, 4, 16, 256};
    EXPECT_THROW(scaling_experiment(Strategy::coherent, few, 1.0), Error);
    EXPECT_THROW(scaling_experiment(Strategy::coherent, narrow, 1.0), Error);
    EXPECT_THROW(scaling_experiment(Strategy::coherent, unsorted, 1.0), Error);
    EXPECT_THROW(parse_strategy("noon"), Error);
}
