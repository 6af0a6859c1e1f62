#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "qmb/error.hpp"
#include "qmb/fundamental_limits.hpp"
#include "qmb/rng.hpp"

using namespace qmb::limits;

namespace {
const auto K = PhysicalConstants::codata2018();
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST(Constants, PlanckScale) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", K.t_P);
    EXPECT_STREQ(buf, "5.391e-44");
    EXPECT_LT(rel(K.t_P, std::sqrt(K.hbar * K.G / std::pow(K.c, 5))), 1e-12);
    EXPECT_EQ(K.l_P, K.c * K.t_P);
    EXPECT_THROW(PhysicalConstants::from(-1.0, 1.0, 1.0), qmb::Error);
}

TEST(MinTick, Values) {
    EXPECT_NEAR(min_tick(M_PI * K.hbar / 2), 1.0, 1e-15);
    EXPECT_NEAR(min_tick(1.0) / 1.656e-34, 1.0, 1e-3);
    EXPECT_DOUBLE_EQ(min_tick(2.0), min_tick(1.0) / 2);
    EXPECT_THROW(min_tick(0.0), qmb::Error);
}

TEST(MaxOps, Values) {
    EXPECT_NEAR(max_ops(K.l_P, K.t_P), 1 / M_PI, 1e-15);
    EXPECT_NEAR(max_ops(1.0, 1.0) / 3.65e77, 1.0, 1e-3);
    EXPECT_DOUBLE_EQ(max_ops(2.0, 3.0), 2 * max_ops(1.0, 3.0));
}

TEST(MaxEnergy, Values) {
    EXPECT_NEAR(max_energy_no_blackhole(2 * K.G / std::pow(K.c, 4)), 1.0, 1e-14);
    EXPECT_NEAR(max_energy_no_blackhole(1.0) / 6.05e43, 1.0, 1e-3);
}

TEST(MaxEnergy, CrossIdentityWithMaxOps) {
    qmb::Philox4x32 rng(1, 0);
    std::uniform_real_distribution<double> e(-30, 30);
    for (int i = 0; i < 1000; ++i) {
        const double R = std::pow(10.0, e(rng)), T = std::pow(10.0, e(rng));
        ASSERT_LT(rel(2 * max_energy_no_blackhole(R) * T / (M_PI * K.hbar), max_ops(R, T)), 1e-10);
    }
}

TEST(MaxQuanta, Values) {
    EXPECT_NEAR(max_quanta(K.l_P), 1 / M_PI, 1e-15);
    EXPECT_NEAR(max_quanta(1.0) / 1.22e69, 1.0, 2e-3);
    EXPECT_NEAR(max_quanta(3.0) / max_quanta(1.0), 9.0, 1e-12);
}

TEST(UniformPartition, Values) {
    const auto [c1, t1] = uniform_partition(K.l_P, K.t_P);
    EXPECT_NEAR(c1, 1.0, 1e-14);
    EXPECT_NEAR(t1, 1.0, 1e-14);
    const auto [c, t] = uniform_partition(1.0, 1.0);
    EXPECT_NEAR(c / 1.54e52, 1.0, 1e-3);
    EXPECT_NEAR(t / 4.31e21, 1.0, 1e-3);
}

TEST(UniverseOps, Values) {
    EXPECT_EQ(universe_ops(K.t_P), 1.0);
    EXPECT_NEAR(universe_ops(4.35e17) / 6.5e121, 1.0, 2e-3);
    EXPECT_NEAR(universe_ops(2.0) / universe_ops(1.0), 4.0, 1e-12);
}

TEST(Wavelengths, Values) {
    EXPECT_NEAR(de_broglie(2 * M_PI * K.hbar), 1.0, 1e-15);
    EXPECT_EQ(n_photon_wavelength(5e-7, 1), 5e-7);
    EXPECT_EQ(n_photon_wavelength(5e-7, 2), 2.5e-7);
    EXPECT_THROW(n_photon_wavelength(5e-7, 0), qmb::Error);
    EXPECT_THROW(de_broglie(0.0), qmb::Error);
}

TEST(Table, DecimalColumnAgreesWithDouble) {
    for (const auto& row : limits_table({})) {
        EXPECT_GT(row.value, 0.0) << row.quantity;
        EXPECT_LT(rel(std::stod(row.decimal), row.value), 1e-13) << row.quantity;
    }
}

TEST(Monotonicity, DimensionalTrends) {
    EXPECT_LT(max_ops(1.0, 1.0), max_ops(1.0, 2.0));
    EXPECT_LT(max_quanta(1.0), max_quanta(1.1));
    EXPECT_GT(min_tick(1.0), min_tick(1.1));
    EXPECT_GT(de_broglie(1.0), de_broglie(1.1));
}
