#pragma once

// Mach-Zehnder interferometer on truncated two-mode Fock states.
//
// Mode conventions (Schroedinger picture, occupation grids indexed (first, second)):
//   beam splitter   a^dag -> (a'^dag + i b'^dag)/sqrt2,  b^dag -> (i a'^dag + b'^dag)/sqrt2
//   phase plate     |n>_{B'} -> exp(-i phi n)|n>_{B'}
//   output grid     (n_C, n_D)
// With this phase sign the photon-number difference M = d^dag d - c^dag c equals
//   (a^dag a - b^dag b) cos(phi) - (a^dag b + b^dag a) sin(phi)
// in the input modes, and the twin-Fock input gives <M> = -N_+ sin(phi).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qmb/fock.hpp"
#include "qmb/stats.hpp"

namespace qmb::interferometer {

using fock::TwoModeState;

inline constexpr double kDerivativeFloor = 1e-9;
inline constexpr double kDefaultFdStep = 1e-5;
inline constexpr double kRouteTolerance = 1e-10;

struct MzConfig {
    double phi = 0.0;
    double fd_step = kDefaultFdStep;
    std::size_t cutoff = 0;
};

struct MStatistics {
    double mean = 0.0;
    double variance = 0.0;
};

struct PhaseSensitivity {
    double phi = 0.0;
    double mean_M = 0.0;
    double var_M = 0.0;
    double delta_phi = 0.0;
};

enum class CrossCheck { off, on };

// 50:50 splitter applied per total-photon-number block. The output cutoff grows
// to the largest occupied total photon number so nothing is truncated.
TwoModeState beam_splitter(const TwoModeState& state);
TwoModeState phase_shift(const TwoModeState& state, double phi);
TwoModeState mach_zehnder(const TwoModeState& state_in, double phi);

// (|N+, N-> + |N-, N+>)/sqrt2 with N+- = (N +- 1)/2; N must be odd.
TwoModeState entangled_input(int n, std::size_t cutoff);

// Moments of M from the input-basis operator form. Precomputes the two operator
// images once so any phase can be evaluated in constant time.
class MMoments {
public:
    explicit MMoments(const TwoModeState& state);
    MStatistics at(double phi) const;

private:
    double norm_ = 0, pd_ = 0, px_ = 0, dd_ = 0, xx_ = 0, dx_ = 0;
};

MStatistics m_statistics_input_route(const TwoModeState& state, double phi);
MStatistics m_statistics_output_route(const TwoModeState& state, double phi);
// Input-basis route; with CrossCheck::on also runs the output route and throws a
// consistency error if they disagree beyond kRouteTolerance (relative to max(1, |value|)).
MStatistics m_statistics(const TwoModeState& state, double phi, CrossCheck check = CrossCheck::on);

PhaseSensitivity phase_error(const TwoModeState& state, double phi, double fd_step = kDefaultFdStep,
                             CrossCheck check = CrossCheck::off);

enum class Strategy { coherent, squeezed, entangled };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

struct ScalingOptions {
    double fd_step = kDefaultFdStep;
    double eps_trunc = fock::kDefaultTruncation;
    std::size_t cutoff = 0;  // 0: choose per N
    int squeeze_grid = 33;
    double squeeze_fraction_max = 0.125;
    double squeeze_theta = 0.0;
    std::size_t cross_check_max_cutoff = 40;
};

struct ScalingRow {
    Strategy strategy = Strategy::coherent;
    int n = 0;
    double phi_op = 0.0;
    double mean_M = 0.0;
    double var_M = 0.0;
    double delta_phi = 0.0;
    double squeeze_fraction = 0.0;
    std::size_t cutoff = 0;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    ScalingFit fit;
};

double default_operating_phase(Strategy s);

ScalingResult scaling_experiment(Strategy strategy, std::span<const int> n_list, double phi_op,
                                 const ScalingOptions& options = {});

}  // namespace qmb::interferometer
