#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qmb {

// Per-experiment record of a Monte Carlo estimation run.
struct EstimationResult {
    std::int64_t n = 0;         // resource count N
    double true_value = 0.0;
    double mean_estimate = 0.0;
    double std_estimate = 0.0;  // sample standard deviation of the estimates
    double rmse = 0.0;
    std::int64_t trials = 0;
    bool flagged = false;       // degenerate operating point; excluded from fits
};

// Least-squares line through (log N, log error).
struct ScalingFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root-mean-square residual in log space
    std::size_t points = 0;
};

ScalingFit fit_log_log(std::span<const double> n, std::span<const double> error);

// Accumulates estimates around a known true value.
class ErrorAccumulator {
public:
    explicit ErrorAccumulator(double true_value) : true_value_(true_value) {}

    void add(double estimate) {
        ++count_;
        const double delta = estimate - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (estimate - mean_);
        const double err = estimate - true_value_;
        sum_sq_err_ += err * err;
    }

    EstimationResult result(std::int64_t n) const;

private:
    double true_value_;
    std::int64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double sum_sq_err_ = 0.0;
};

}  // namespace qmb
