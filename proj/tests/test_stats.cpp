#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qmb/error.hpp"
#include "qmb/stats.hpp"

TEST(FitLogLog, RecoversExactPowerLaw) {
    std::vector<double> n{4, 8, 16, 32, 64}, e;
    for (double x : n) e.push_back(3.0 * std::pow(x, -0.75));
    const auto fit = qmb::fit_log_log(n, e);
    EXPECT_NEAR(fit.exponent, -0.75, 1e-12);
    EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-12);
    EXPECT_LT(fit.residual, 1e-12);
    EXPECT_EQ(fit.points, 5u);
}

TEST(FitLogLog, RejectsBadInput) {
    std::vector<double> n{1, 2}, e{1.0, -1.0}, one{1.0};
    EXPECT_THROW(qmb::fit_log_log(n, e), qmb::Error);
    EXPECT_THROW(qmb::fit_log_log(one, one), qmb::Error);
    std::vector<double> same{2, 2}, ok{1, 2};
    EXPECT_THROW(qmb::fit_log_log(same, ok), qmb::Error);
}

TEST(ErrorAccumulator, MatchesDirectFormulas) {
    const std::vector<double> xs{1.0, 2.0, 4.0, 7.0};
    qmb::ErrorAccumulator acc(3.0);
    for (double x : xs) acc.add(x);
    const auto r = acc.result(5);
    EXPECT_EQ(r.n, 5);
    EXPECT_EQ(r.trials, 4);
    EXPECT_DOUBLE_EQ(r.mean_estimate, 3.5);
    // squared errors 4, 1, 1, 16
    EXPECT_DOUBLE_EQ(r.rmse, std::sqrt(22.0 / 4.0));
    // deviations from 3.5: 6.25, 2.25, 0.25, 12.25
    EXPECT_DOUBLE_EQ(r.std_estimate, std::sqrt(21.0 / 3.0));
}
