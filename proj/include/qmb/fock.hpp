#pragma once

// Truncated Fock-space states and observables for one and two bosonic modes.
// Natural units (hbar = 1). Amplitudes are stored densely; states and
// observables are immutable once built.

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace qmb::fock {

using complex = std::complex<double>;

inline constexpr double kDefaultTruncation = 1e-8;

// Photon-number amplitudes 0..cutoff of a single mode.
class FockVector {
public:
    explicit FockVector(std::vector<complex> amplitudes);

    std::size_t cutoff() const { return amplitudes_.size() - 1; }
    std::size_t dimension() const { return amplitudes_.size(); }
    complex amplitude(std::size_t n) const { return amplitudes_.at(n); }
    std::span<const complex> amplitudes() const { return amplitudes_; }

    double norm_squared() const;
    double number_expectation() const;

    // Same state on a larger cutoff (zero padded).
    FockVector padded(std::size_t new_cutoff) const;

private:
    std::vector<complex> amplitudes_;
};

// Amplitude grid over (n_A, n_B), both in 0..cutoff, stored row-major in n_A.
class TwoModeState {
public:
    TwoModeState(std::size_t cutoff, std::vector<complex> amplitudes);

    static TwoModeState vacuum(std::size_t cutoff);

    std::size_t cutoff() const { return cutoff_; }
    std::size_t side() const { return cutoff_ + 1; }
    std::size_t index(std::size_t na, std::size_t nb) const { return na * side() + nb; }
    complex amplitude(std::size_t na, std::size_t nb) const;
    std::span<const complex> amplitudes() const { return amplitudes_; }

    double norm_squared() const;
    double number_expectation_a() const;
    double number_expectation_b() const;
    double total_number_expectation() const { return number_expectation_a() + number_expectation_b(); }

    // Largest n_A + n_B carrying a nonzero amplitude (0 for the zero state).
    std::size_t max_total_photons() const;

    TwoModeState padded(std::size_t new_cutoff) const;

private:
    std::size_t cutoff_;
    std::vector<complex> amplitudes_;
};

// Hermitian matrix in the occupation basis of one mode (dimension cutoff+1) or
// two modes (dimension (cutoff+1)^2, flattened like TwoModeState).
class Observable {
public:
    Observable(int mode_arity, std::size_t cutoff, std::vector<complex> matrix);

    int mode_arity() const { return arity_; }
    std::size_t cutoff() const { return cutoff_; }
    std::size_t dimension() const { return dim_; }
    complex operator()(std::size_t row, std::size_t col) const { return matrix_[row * dim_ + col]; }

    // Largest |O_ij - conj(O_ji)|.
    double hermiticity_defect() const;

    std::vector<complex> apply(std::span<const complex> state) const;

private:
    int arity_;
    std::size_t cutoff_;
    std::size_t dim_;
    std::vector<complex> matrix_;
};

inline constexpr double kHermiticityTolerance = 1e-12;

// ceil(N + 6 sqrt(N) + 10): Poisson tails below 1e-8 for the tested range.
std::size_t default_cutoff(double mean_photons);

// Smallest even cutoff for which squeezed_vacuum(r) leaks less than eps.
std::size_t squeezed_cutoff(double r, double eps = kDefaultTruncation);

FockVector coherent_state(complex alpha, std::size_t cutoff, double eps = kDefaultTruncation);
FockVector squeezed_vacuum(double r, double theta, std::size_t cutoff, double eps = kDefaultTruncation);
FockVector fock_state(std::size_t n, std::size_t cutoff);

TwoModeState tensor(const FockVector& a, const FockVector& b);

// Single-mode observables.
Observable number_operator(std::size_t cutoff);

// Two-mode observables.
Observable number_operator_a(std::size_t cutoff);
Observable number_operator_b(std::size_t cutoff);
Observable total_number_operator(std::size_t cutoff);
// a^dag b + b^dag a projected onto the truncated space.
Observable hopping_operator(std::size_t cutoff);
// cx * x + cy * y for observables of equal shape.
Observable combine(const Observable& x, double cx, const Observable& y, double cy);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

// <O> and <O^2> - <O>^2 on the normalized state.
Moments expectation_and_variance(const Observable& obs, const FockVector& state);
Moments expectation_and_variance(const Observable& obs, const TwoModeState& state);

// log(n!) for n = 0..max_n via cumulative sums.
std::vector<double> log_factorials(std::size_t max_n);

}  // namespace qmb::fock
