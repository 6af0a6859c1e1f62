#pragma once

// Two-level-system phase estimation: Ramsey and GHZ probability laws, their
// Monte Carlo estimators, frequency-standard error laws and Pauli-channel
// discrimination with and without an entangled ancilla.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "qmb/rng.hpp"
#include "qmb/stats.hpp"

namespace qmb::qubit {

using complex = std::complex<double>;

// State vector over the 2^n computational basis states; bit q of the index is qubit q.
class QubitRegister {
public:
    QubitRegister(int n, std::vector<complex> amplitudes);

    static QubitRegister ghz(int n);

    int size() const { return n_; }
    std::span<const complex> amplitudes() const { return amplitudes_; }
    double norm_squared() const;

    // |1> -> e^{i phi}|1> on one qubit.
    QubitRegister with_phase(int qubit, double phi) const;
    complex overlap(const QubitRegister& other) const;  // <this|other>

private:
    int n_;
    std::vector<complex> amplitudes_;
};

struct MonteCarloPlan {
    std::int64_t trials = 2000;
    std::uint64_t seed = 0;
    double true_phi = 0.4;
};

inline constexpr double kLawSlopeFloor = 1e-6;
inline constexpr int kDefaultRepetitions = 100;
inline constexpr int kExplicitCheckMaxQubits = 12;
inline constexpr double kExplicitCheckTolerance = 1e-12;

double ramsey_probability(double phi);
// cos^2(N phi / 2); for N <= 12 also checked against the explicit register.
double ghz_probability(int n, double phi);
// |<phi_in|phi_out>|^2 from a 2^N amplitude simulation.
double ghz_probability_explicit(int n, double phi);

enum class PhaseStrategy { independent, ghz };

std::string_view to_string(PhaseStrategy s);

// Fringe position 0.4 rad: true_phi = 0.4 for independent qubits, 0.4/N for GHZ.
double default_true_phi(int n, PhaseStrategy s);

// Each trial spends N * repetitions qubit-uses: the independent strategy draws
// N * repetitions single-qubit outcomes from p(phi); the GHZ strategy draws
// `repetitions` N-qubit outcomes from q(phi). The estimate inverts the law on
// the monotone branch that contains the true phase.
EstimationResult estimate_phase_mc(int n, PhaseStrategy strategy, const MonteCarloPlan& plan,
                                   int repetitions = kDefaultRepetitions);

enum class IonStrategy { independent, entangled };

double frequency_error(int n, double t, IonStrategy strategy);

enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Pauli, 4> kPaulis{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

std::string_view to_string(Pauli p);

struct BellProbe {};

// One qubit prepared in `state` and read out in the orthonormal basis `basis`.
struct SingleProbe {
    std::array<complex, 2> state;
    std::array<std::array<complex, 2>, 2> basis;
};

using Probe = std::variant<BellProbe, SingleProbe>;

// Empirical identification rate when `channel` acts on the probe qubit.
double pauli_discriminate(const Probe& probe, Pauli channel, const MonteCarloPlan& plan);

// Empirical rate averaged over the four channels (uniform prior).
double pauli_success_uniform(const Probe& probe, const MonteCarloPlan& plan);

// Exact maximum-likelihood success probability under a uniform channel prior.
double pauli_success_exact(const SingleProbe& probe);

// Haar-random probe state and measurement basis.
SingleProbe random_single_probe(Philox4x32& rng);

}  // namespace qmb::qubit
