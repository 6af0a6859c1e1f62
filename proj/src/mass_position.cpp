#include "qmb/mass_position.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qmb/error.hpp"

namespace qmb::mass {

namespace {

double heisenberg_floor(double hbar) { return hbar * hbar / 4.0; }

void check_positive(double v, const char* what) {
    require(v > 0 && std::isfinite(v), ErrorKind::domain, std::string(what) + " must be positive and finite");
}

}  // namespace

bool is_valid(const GaussianState& g, double hbar) {
    return g.s_xx > 0 && g.s_pp > 0 && g.determinant() >= heisenberg_floor(hbar) * (1.0 - kHeisenbergTolerance);
}

void validate(const GaussianState& g, double hbar) {
    require(g.s_xx > 0 && g.s_pp > 0, ErrorKind::domain, "Gaussian state needs positive variances");
    require(g.determinant() >= heisenberg_floor(hbar) * (1.0 - kHeisenbergTolerance), ErrorKind::domain,
            "Gaussian state violates the Heisenberg relation: det = " + std::to_string(g.determinant()) +
                " < hbar^2/4 = " + std::to_string(heisenberg_floor(hbar)));
}

GaussianState minimum_uncertainty_state(double s_xx, double hbar) {
    check_positive(s_xx, "s_xx");
    return {0.0, 0.0, s_xx, 0.0, heisenberg_floor(hbar) / s_xx};
}

GaussianState free_evolve(const GaussianState& g, double t, double m) {
    require(t >= 0, ErrorKind::domain, "free_evolve: t must be non-negative");
    check_positive(m, "mass");
    const double v = t / m;
    GaussianState out = g;
    out.mean_x = g.mean_x + g.mean_p * v;
    out.s_xx = g.s_xx + 2.0 * v * g.s_xp + v * v * g.s_pp;
    out.s_xp = g.s_xp + v * g.s_pp;
    return out;
}

double position_variance_at(const GaussianState& g, double t, double m) { return free_evolve(g, t, m).s_xx; }

double sql_variance_bound(double t, double m, double hbar) {
    require(t >= 0, ErrorKind::domain, "sql_variance_bound: t must be non-negative");
    check_positive(m, "mass");
    return hbar * t / m;
}

double min_uncorrelated_variance(double t, double m, double hbar) {
    check_positive(t, "t");
    check_positive(m, "mass");
    const double scale = hbar * t / m;
    auto evolved = [&](double log_s_xx) {
        return position_variance_at(minimum_uncertainty_state(std::exp(log_s_xx), hbar), t, m);
    };
    const auto [arg, value] = boost::math::tools::brent_find_minima(
        evolved, std::log(scale) - 30.0, std::log(scale) + 30.0, std::numeric_limits<double>::digits / 2);
    (void)arg;
    return value;
}

double contractive_level(double delta2, double m, double hbar) {
    check_positive(delta2, "delta^2");
    check_positive(m, "mass");
    return 2.0 * delta2 * hbar / m;
}

double optimal_contractive_momentum_variance(double delta2, double m, double hbar) {
    check_positive(delta2, "delta^2");
    check_positive(m, "mass");
    return m * hbar / (4.0 * delta2);
}

GaussianState contractive_state(double delta2, double m, double s_pp, double hbar) {
    check_positive(s_pp, "s_pp");
    const double level = contractive_level(delta2, m, hbar);
    const double excess = level * s_pp - heisenberg_floor(hbar);
    require(excess > 0, ErrorKind::domain,
            "contractive_state: s_pp too small, no minimum-uncertainty state dips below the level");
    GaussianState g{0.0, 0.0, level, -std::sqrt(excess), s_pp};
    validate(g, hbar);
    return g;
}

double below_level_window(const GaussianState& g, double level, double m) {
    check_positive(m, "mass");
    // s_xx(t) - level = a t^2 + b t + c
    const double a = g.s_pp / (m * m);
    const double b = 2.0 * g.s_xp / m;
    const double c = g.s_xx - level;
    const double disc = b * b - 4.0 * a * c;
    if (!(disc > 0)) return 0.0;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    double r1 = q / a, r2 = c / q;
    if (r1 > r2) std::swap(r1, r2);
    const double start = std::max(0.0, r1);
    return r2 > start ? r2 - start : 0.0;
}

PositionMeasurement measure_position(const GaussianState& g, double sigma_m, Philox4x32& rng, double hbar) {
    require(sigma_m > 0, ErrorKind::domain, "measure_position: pointer resolution must be positive");
    const double noise = sigma_m * sigma_m;
    const double total = g.s_xx + noise;
    std::normal_distribution<double> gauss;
    const double outcome = g.mean_x + std::sqrt(total) * gauss(rng);
    const double innovation = outcome - g.mean_x;
    GaussianState post;
    post.mean_x = g.mean_x + g.s_xx / total * innovation;
    post.mean_p = g.mean_p + g.s_xp / total * innovation;
    post.s_xx = g.s_xx * noise / total;
    post.s_xp = g.s_xp * noise / total;
    post.s_pp = g.s_pp - g.s_xp * g.s_xp / total + heisenberg_floor(hbar) / noise;
    return {outcome, post};
}

PositionMeasurement measure_position(const GaussianState& g, double sigma_m, std::uint64_t seed, double hbar) {
    Philox4x32 rng(seed, 0);
    return measure_position(g, sigma_m, rng, hbar);
}

PositionMeasurement measure_momentum(const GaussianState& g, double sigma_p, Philox4x32& rng, double hbar) {
    require(sigma_p > 0, ErrorKind::domain, "measure_momentum: pointer resolution must be positive");
    const double noise = sigma_p * sigma_p;
    const double total = g.s_pp + noise;
    std::normal_distribution<double> gauss;
    const double outcome = g.mean_p + std::sqrt(total) * gauss(rng);
    const double innovation = outcome - g.mean_p;
    GaussianState post;
    post.mean_p = g.mean_p + g.s_pp / total * innovation;
    post.mean_x = g.mean_x + g.s_xp / total * innovation;
    post.s_pp = g.s_pp * noise / total;
    post.s_xp = g.s_xp * noise / total;
    post.s_xx = g.s_xx - g.s_xp * g.s_xp / total + heisenberg_floor(hbar) / noise;
    return {outcome, post};
}

GaussianState position_dependent_kick(const GaussianState& g, double kappa) {
    GaussianState out = g;
    out.mean_p = g.mean_p - kappa * g.mean_x;
    out.s_xp = g.s_xp - kappa * g.s_xx;
    out.s_pp = g.s_pp - 2.0 * kappa * g.s_xp + kappa * kappa * g.s_xx;
    return out;
}

std::string_view to_string(Preparation p) {
    switch (p) {
        case Preparation::naive: return "naive";
        case Preparation::contractive: return "contractive";
        case Preparation::momentum_qnd: return "momentum_qnd";
    }
    return "unknown";
}

Preparation parse_preparation(std::string_view name) {
    if (name == "naive") return Preparation::naive;
    if (name == "contractive") return Preparation::contractive;
    if (name == "momentum_qnd" || name == "momentum-qnd" || name == "qnd") return Preparation::momentum_qnd;
    fail(ErrorKind::config, "unknown preparation '" + std::string(name) + "'");
}

bool beats_sql(double pre_variance, double sql_bound) {
    return pre_variance < sql_bound * (1.0 - kHeisenbergTolerance);
}

MeasurementRecord repeated_measurement_run(Preparation prep, double t_gap, double m, double sigma_m, int n_meas,
                                           std::uint64_t seed, const RunOptions& options) {
    check_positive(t_gap, "t_gap");
    check_positive(m, "mass");
    check_positive(sigma_m, "sigma_m");
    check_positive(options.initial_spread_ratio, "initial_spread_ratio");
    require(n_meas >= 2, ErrorKind::precondition, "repeated_measurement_run: need at least two measurements");
    const double hbar = options.hbar;
    const double bound = sql_variance_bound(t_gap, m, hbar);
    const double sigma_p = hbar / (2.0 * sigma_m);

    GaussianState g = minimum_uncertainty_state(options.initial_spread_ratio * bound, hbar);
    Philox4x32 rng(seed, 0);
    MeasurementRecord rec;
    for (int k = 0; k < n_meas; ++k) {
        rec.times.push_back(k * t_gap);
        rec.pre_variances.push_back(g.s_xx);
        rec.pre_momentum_variances.push_back(g.s_pp);
        rec.sql_bound_values.push_back(bound);

        const auto meas = prep == Preparation::momentum_qnd ? measure_momentum(g, sigma_p, rng, hbar)
                                                            : measure_position(g, sigma_m, rng, hbar);
        g = meas.posterior;
        rec.outcomes.push_back(meas.outcome);
        rec.post_variances.push_back(g.s_xx);

        bool control = false;
        if (prep == Preparation::naive && g.s_xp != 0.0) {
            g.s_xp = 0.0;
            control = true;
        } else if (prep == Preparation::contractive) {
            g = position_dependent_kick(g, m / t_gap + g.s_xp / g.s_xx);
            control = true;
        }
        rec.control_step.push_back(control);
        validate(g, hbar);
        g = free_evolve(g, t_gap, m);
    }
    return rec;
}

GaussianState sample_valid_state(Philox4x32& rng, double x_lo, double x_hi, double hbar) {
    std::uniform_real_distribution<double> unit;
    const double s_xx = std::exp(std::log(x_lo) + unit(rng) * (std::log(x_hi) - std::log(x_lo)));
    const double floor_pp = heisenberg_floor(hbar) / s_xx;
    const double s_pp = floor_pp * std::exp(unit(rng) * std::log(100.0));
    const double limit = std::sqrt(std::max(0.0, s_xx * s_pp - heisenberg_floor(hbar)));
    const double s_xp = (2.0 * unit(rng) - 1.0) * limit;
    return {0.0, 0.0, s_xx, s_xp, s_pp};
}

}  // namespace qmb::mass
