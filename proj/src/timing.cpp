#include "qmb/timing.hpp"

#include <random>
#include <string>

#include "qmb/error.hpp"
#include "qmb/rng.hpp"

namespace qmb::timing {

std::string_view to_string(PulseStrategy s) {
    return s == PulseStrategy::classical ? "classical" : "entangled";
}

PulseStrategy parse_pulse_strategy(std::string_view name) {
    if (name == "classical") return PulseStrategy::classical;
    if (name == "entangled") return PulseStrategy::entangled;
    fail(ErrorKind::config, "unknown timing strategy '" + std::string(name) + "'");
}

void validate(const PulseModel& model) {
    require(model.bandwidth > 0, ErrorKind::domain, "pulse bandwidth must be positive");
    require(model.n_photons >= 1, ErrorKind::domain, "pulse needs at least one photon");
}

double single_draw_sigma(const PulseModel& model) {
    validate(model);
    const double sigma = 1.0 / model.bandwidth;
    return model.strategy == PulseStrategy::entangled ? sigma / model.n_photons : sigma;
}

EstimationResult arrival_time_rmse(const PulseModel& model, double true_t, const TimingPlan& plan) {
    require(plan.trials >= 2, ErrorKind::precondition, "arrival_time_rmse: need at least two trials");
    const double sigma = single_draw_sigma(model);
    const int draws = model.strategy == PulseStrategy::classical ? model.n_photons : 1;
    ErrorAccumulator acc(true_t);
    for (std::int64_t k = 0; k < plan.trials; ++k) {
        Philox4x32 rng(plan.seed, static_cast<std::uint64_t>(k));
        std::normal_distribution<double> arrival(true_t, sigma);
        double sum = 0.0;
        for (int i = 0; i < draws; ++i) sum += arrival(rng);
        acc.add(sum / draws);
    }
    return acc.result(model.n_photons);
}

}  // namespace qmb::timing
