#pragma once

// Gaussian states of a free mass under repeated position measurement (SI units).

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qmb/constants.hpp"
#include "qmb/rng.hpp"

namespace qmb::mass {

inline constexpr double kHeisenbergTolerance = 1e-12;  // relative

// Mean and covariance of (x, p).
struct GaussianState {
    double mean_x = 0.0;  // m
    double mean_p = 0.0;  // kg m / s
    double s_xx = 0.0;    // m^2
    double s_xp = 0.0;    // m kg m / s
    double s_pp = 0.0;    // (kg m / s)^2

    double determinant() const { return s_xx * s_pp - s_xp * s_xp; }
};

// Throws a domain error unless s_xx, s_pp > 0 and det >= hbar^2/4 (1 - 1e-12).
void validate(const GaussianState& g, double hbar = codata::hbar);
bool is_valid(const GaussianState& g, double hbar = codata::hbar);

GaussianState minimum_uncertainty_state(double s_xx, double hbar = codata::hbar);

GaussianState free_evolve(const GaussianState& g, double t, double m);
double position_variance_at(const GaussianState& g, double t, double m);

// hbar t / m
double sql_variance_bound(double t, double m, double hbar = codata::hbar);

// min over s_xx of the evolved variance of an uncorrelated minimum-uncertainty
// state, found numerically (Brent) on log s_xx.
double min_uncorrelated_variance(double t, double m, double hbar = codata::hbar);

// Level 2 delta^2 hbar / m; delta2 = delta^2 carries units of seconds.
double contractive_level(double delta2, double m, double hbar = codata::hbar);

// Minimum-uncertainty state with s_xp < 0 that enters the level at t = 0, so
// the whole below-level window lies in t >= 0.
GaussianState contractive_state(double delta2, double m, double s_pp, double hbar = codata::hbar);

// s_pp = m hbar / (4 delta^2): the momentum variance that maximizes the window.
double optimal_contractive_momentum_variance(double delta2, double m, double hbar = codata::hbar);

// Length of {t >= 0 : s_xx(t) < level}.
double below_level_window(const GaussianState& g, double level, double m);

struct PositionMeasurement {
    double outcome = 0.0;
    GaussianState posterior;
};

// Gaussian pointer of resolution sigma_m: outcome ~ N(mean_x, s_xx + sigma_m^2),
// posterior by conditioning, plus momentum diffusion hbar^2 / (4 sigma_m^2).
PositionMeasurement measure_position(const GaussianState& g, double sigma_m, Philox4x32& rng,
                                     double hbar = codata::hbar);
PositionMeasurement measure_position(const GaussianState& g, double sigma_m, std::uint64_t seed,
                                     double hbar = codata::hbar);

// Momentum pointer of resolution sigma_p, position diffusion hbar^2 / (4 sigma_p^2).
PositionMeasurement measure_momentum(const GaussianState& g, double sigma_p, Philox4x32& rng,
                                     double hbar = codata::hbar);

// Momentum kick proportional to position, p -> p - kappa x. Symplectic.
GaussianState position_dependent_kick(const GaussianState& g, double kappa);

enum class Preparation { naive, contractive, momentum_qnd };

std::string_view to_string(Preparation p);
Preparation parse_preparation(std::string_view name);

struct MeasurementRecord {
    std::vector<double> times;
    std::vector<double> outcomes;  // metres, or kg m/s for momentum_qnd
    std::vector<double> pre_variances;
    std::vector<double> post_variances;
    std::vector<double> sql_bound_values;
    std::vector<double> pre_momentum_variances;
    std::vector<bool> control_step;  // a recorded re-preparation followed this measurement
};

bool beats_sql(double pre_variance, double sql_bound);

struct RunOptions {
    // Initial uncorrelated minimum-uncertainty state with s_xx = ratio * hbar t_gap / m.
    double initial_spread_ratio = 4.0;
    double hbar = codata::hbar;
};

// Alternates a measurement, the preparation's control step and free evolution
// for t_gap. naive discards position-momentum correlation after each
// measurement; contractive applies the kick that minimizes s_xx at the next
// measurement; momentum_qnd measures momentum with resolution hbar / (2 sigma_m).
MeasurementRecord repeated_measurement_run(Preparation prep, double t_gap, double m, double sigma_m, int n_meas,
                                           std::uint64_t seed, const RunOptions& options = {});

// Random valid state for property tests: s_xx log-uniform over [x_lo, x_hi],
// s_pp log-uniform over [1, 100] x hbar^2/(4 s_xx), s_xp uniform in the allowed interval.
GaussianState sample_valid_state(Philox4x32& rng, double x_lo, double x_hi, double hbar = codata::hbar);

}  // namespace qmb::mass
