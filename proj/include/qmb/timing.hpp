#pragma once

// Arrival-time estimation with N classical photons versus one frequency-entangled
// N-photon signal.

#include <cstdint>
#include <span>
#include <string_view>

#include "qmb/stats.hpp"

namespace qmb::timing {

enum class PulseStrategy { classical, entangled };

std::string_view to_string(PulseStrategy s);
PulseStrategy parse_pulse_strategy(std::string_view name);

struct PulseModel {
    double bandwidth = 1.0;  // rad/s
    int n_photons = 1;
    PulseStrategy strategy = PulseStrategy::classical;
};

struct TimingPlan {
    std::int64_t trials = 5000;
    std::uint64_t seed = 0;
};

void validate(const PulseModel& model);

// Spread of a single arrival record: 1/bandwidth per photon, 1/(N bandwidth)
// for the entangled signal.
double single_draw_sigma(const PulseModel& model);

// Classical: sample mean of N Gaussian arrivals with sigma 1/bandwidth.
// Entangled: one Gaussian arrival with sigma 1/(N bandwidth).
// Trial k uses random stream k, so N = 1 gives identical draws for both.
EstimationResult arrival_time_rmse(const PulseModel& model, double true_t, const TimingPlan& plan);

}  // namespace qmb::timing
