#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "qmb/error.hpp"
#include "qmb/fock.hpp"

using namespace qmb::fock;
using qmb::Error;
using qmb::ErrorKind;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::usage;
}

}  // namespace

TEST(CoherentState, PoissonNumberDistribution) {
    const double mean = 9.0;
    const auto s = coherent_state(complex{3.0, 0.0}, default_cutoff(mean));
    // Oracle: p_0 = e^{-mean}, p_n = p_{n-1} mean / n.
    double p = std::exp(-mean);
    for (std::size_t n = 0; n <= s.cutoff(); ++n) {
        if (n > 0) p *= mean / static_cast<double>(n);
        EXPECT_NEAR(std::norm(s.amplitude(n)), p, 1e-14) << n;
    }
    EXPECT_NEAR(s.number_expectation(), mean, 1e-7);
    const auto m = expectation_and_variance(number_operator(s.cutoff()), s);
    EXPECT_NEAR(m.mean, mean, 1e-7);
    EXPECT_NEAR(m.variance, mean, 1e-5);
}

TEST(CoherentState, PhaseOfAmplitudes) {
    const complex alpha = std::polar(2.0, 0.7);
    const auto s = coherent_state(alpha, 40);
    for (std::size_t n = 1; n < 10; ++n)
        EXPECT_NEAR(std::arg(s.amplitude(n) / s.amplitude(0)), std::remainder(0.7 * n, 2 * M_PI), 1e-12);
}

TEST(CoherentState, TruncationIsRefused) {
    EXPECT_EQ(kind_of([] { coherent_state(complex{5.0, 0.0}, 10); }), ErrorKind::truncation);
}

TEST(SqueezedVacuum, MomentsAndParity) {
    const double r = 0.8;
    const auto s = squeezed_vacuum(r, 0.0, squeezed_cutoff(r, 1e-12), 1e-12);
    for (std::size_t n = 1; n <= s.cutoff(); n += 2) EXPECT_EQ(s.amplitude(n), complex(0.0, 0.0));
    const double sh = std::sinh(r), ch = std::cosh(r);
    const auto m = expectation_and_variance(number_operator(s.cutoff()), s);
    EXPECT_NEAR(m.mean, sh * sh, 1e-9);
    EXPECT_NEAR(m.variance, 2 * sh * sh * ch * ch, 1e-8);
    EXPECT_NEAR(std::abs(s.amplitude(0)), 1.0 / std::sqrt(ch), 1e-14);
}

TEST(SqueezedVacuum, CutoffHelperIsSufficient) {
    for (double r : {0.1, 1.0, 2.0, 3.0}) {
        const auto c = squeezed_cutoff(r);
        EXPECT_EQ(c % 2, 0u);
        EXPECT_NO_THROW(squeezed_vacuum(r, 0.3, c));
        if (c >= 4) EXPECT_EQ(kind_of([&] { squeezed_vacuum(r, 0.3, c - 2); }), ErrorKind::truncation);
    }
}

TEST(FockState, BasisVectorAndRange) {
    const auto s = fock_state(3, 5);
    EXPECT_EQ(s.amplitude(3), complex(1.0, 0.0));
    EXPECT_DOUBLE_EQ(s.number_expectation(), 3.0);
    EXPECT_EQ(kind_of([] { fock_state(6, 5); }), ErrorKind::out_of_range);
}

TEST(TwoMode, TensorAndShapes) {
    const auto a = fock_state(2, 4), b = fock_state(1, 4);
    const auto s = tensor(a, b);
    EXPECT_EQ(s.amplitude(2, 1), complex(1.0, 0.0));
    EXPECT_DOUBLE_EQ(s.number_expectation_a(), 2.0);
    EXPECT_DOUBLE_EQ(s.number_expectation_b(), 1.0);
    EXPECT_EQ(s.max_total_photons(), 3u);
    EXPECT_EQ(kind_of([&] { tensor(a, fock_state(1, 5)); }), ErrorKind::shape);
    EXPECT_EQ(kind_of([&] { s.amplitude(5, 0); }), ErrorKind::out_of_range);
    const auto p = s.padded(7);
    EXPECT_EQ(p.amplitude(2, 1), complex(1.0, 0.0));
    EXPECT_DOUBLE_EQ(p.norm_squared(), 1.0);
}

TEST(Observable, RejectsNonHermitian) {
    std::vector<complex> m{0.0, 1.0, 0.0, 0.0};
    EXPECT_EQ(kind_of([&] { Observable(1, 1, m); }), ErrorKind::invariant);
}

TEST(Observable, HoppingOnTwinFock) {
    // a^dag b + b^dag a on |1,1>: mean 0, variance <(a^dag b + b^dag a)^2> = 4.
    const auto s = tensor(fock_state(1, 3), fock_state(1, 3));
    const auto m = expectation_and_variance(hopping_operator(3), s);
    EXPECT_NEAR(m.mean, 0.0, 1e-14);
    EXPECT_NEAR(m.variance, 4.0, 1e-12);
}

TEST(Observable, CombinedNumberDifference) {
    const auto s = tensor(coherent_state(complex{1.5, 0}, 30), fock_state(2, 30));
    const auto d = combine(number_operator_a(30), 1.0, number_operator_b(30), -1.0);
    const auto m = expectation_and_variance(d, s);
    EXPECT_NEAR(m.mean, 2.25 - 2.0, 1e-9);
    EXPECT_NEAR(m.variance, 2.25, 1e-8);
    const auto t = expectation_and_variance(total_number_operator(30), s);
    EXPECT_NEAR(t.mean, 4.25, 1e-9);
}

TEST(LogFactorials, MatchLgamma) {
    const auto lf = log_factorials(200);
    for (std::size_t n = 0; n <= 200; ++n) EXPECT_NEAR(lf[n], std::lgamma(n + 1.0), 1e-9 * (1 + lf[n]));
}
