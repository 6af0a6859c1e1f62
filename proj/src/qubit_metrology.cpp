#include "qmb/qubit_metrology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qmb/error.hpp"

namespace qmb::qubit {

namespace {

constexpr double kPi = std::numbers::pi;

double norm_sq(std::span<const complex> v) {
    double s = 0;
    for (const auto& a : v) s += std::norm(a);
    return s;
}

}  // namespace

QubitRegister::QubitRegister(int n, std::vector<complex> amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {
    require(n >= 1 && n <= 24, ErrorKind::precondition, "QubitRegister: qubit count must be in 1..24");
    require(amplitudes_.size() == (std::size_t{1} << n), ErrorKind::invariant, "QubitRegister: need 2^n amplitudes");
    require(std::abs(norm_squared() - 1.0) <= 1e-12, ErrorKind::invariant, "QubitRegister: state is not normalized");
}

QubitRegister QubitRegister::ghz(int n) {
    require(n >= 1 && n <= 24, ErrorKind::precondition, "QubitRegister::ghz: qubit count must be in 1..24");
    std::vector<complex> amps(std::size_t{1} << n);
    amps.front() = 1.0 / std::numbers::sqrt2;
    amps.back() = 1.0 / std::numbers::sqrt2;
    return QubitRegister(n, std::move(amps));
}

double QubitRegister::norm_squared() const { return norm_sq(amplitudes_); }

QubitRegister QubitRegister::with_phase(int qubit, double phi) const {
    require(qubit >= 0 && qubit < n_, ErrorKind::out_of_range, "with_phase: qubit index out of range");
    auto amps = amplitudes_;
    const complex factor = std::polar(1.0, phi);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if (i & bit) amps[i] *= factor;
    return QubitRegister(n_, std::move(amps));
}

complex QubitRegister::overlap(const QubitRegister& other) const {
    require(n_ == other.n_, ErrorKind::shape, "overlap: registers differ in size");
    complex s{};
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    return s;
}

double ramsey_probability(double phi) {
    const double c = std::cos(phi / 2.0);
    return c * c;
}

double ghz_probability_explicit(int n, double phi) {
    const auto in = QubitRegister::ghz(n);
    auto out = in;
    for (int q = 0; q < n; ++q) out = out.with_phase(q, phi);
    return std::norm(in.overlap(out));
}

double ghz_probability(int n, double phi) {
    require(n >= 1, ErrorKind::precondition, "ghz_probability: N must be at least 1");
    const double c = std::cos(static_cast<double>(n) * phi / 2.0);
    const double q = c * c;
    if (n <= kExplicitCheckMaxQubits) {
        const double explicit_q = ghz_probability_explicit(n, phi);
        if (std::abs(explicit_q - q) > kExplicitCheckTolerance) {
            fail(ErrorKind::consistency, "ghz_probability: closed form " + std::to_string(q) +
                                             " disagrees with register simulation " + std::to_string(explicit_q));
        }
    }
    return q;
}

std::string_view to_string(PhaseStrategy s) { return s == PhaseStrategy::ghz ? "ghz" : "independent"; }

double default_true_phi(int n, PhaseStrategy s) { return s == PhaseStrategy::ghz ? 0.4 / n : 0.4; }

namespace {

// Inverts cos^2(x/2) = prob on the branch [j pi, (j+1) pi].
double invert_fringe(double prob, long branch) {
    const double base = 2.0 * std::acos(std::sqrt(std::clamp(prob, 0.0, 1.0)));
    return branch % 2 == 0 ? branch * kPi + base : (branch + 1) * kPi - base;
}

}  // namespace

EstimationResult estimate_phase_mc(int n, PhaseStrategy strategy, const MonteCarloPlan& plan, int repetitions) {
    require(n >= 1, ErrorKind::precondition, "estimate_phase_mc: N must be at least 1");
    require(plan.trials >= 1, ErrorKind::precondition, "estimate_phase_mc: trials must be at least 1");
    require(repetitions >= 1, ErrorKind::precondition, "estimate_phase_mc: repetitions must be at least 1");

    // x is the accumulated fringe phase: phi for independent qubits, N phi for GHZ.
    const double scale = strategy == PhaseStrategy::ghz ? static_cast<double>(n) : 1.0;
    const double x_true = scale * plan.true_phi;
    const double law = strategy == PhaseStrategy::ghz ? ghz_probability(n, plan.true_phi) : ramsey_probability(plan.true_phi);
    const double slope = scale * std::abs(std::sin(x_true)) / 2.0;
    const auto branch = static_cast<long>(std::floor(x_true / kPi));
    const long long draws = strategy == PhaseStrategy::ghz ? repetitions : static_cast<long long>(n) * repetitions;

    ErrorAccumulator acc(plan.true_phi);
    for (std::int64_t t = 0; t < plan.trials; ++t) {
        Philox4x32 rng(plan.seed, static_cast<std::uint64_t>(t));
        std::binomial_distribution<long long> binomial(draws, law);
        const long long hits = binomial(rng);
        const double x_hat = invert_fringe(static_cast<double>(hits) / static_cast<double>(draws), branch);
        acc.add(x_hat / scale);
    }
    auto result = acc.result(n);
    result.flagged = slope < kLawSlopeFloor;
    return result;
}

double frequency_error(int n, double t, IonStrategy strategy) {
    require(n >= 1, ErrorKind::precondition, "frequency_error: N must be at least 1");
    require(t > 0, ErrorKind::domain, "frequency_error: interrogation time must be positive");
    const double dn = static_cast<double>(n);
    return strategy == IonStrategy::entangled ? 1.0 / (dn * t) : 1.0 / (std::sqrt(dn) * t);
}

std::string_view to_string(Pauli p) {
    switch (p) {
        case Pauli::I: return "I";
        case Pauli::X: return "X";
        case Pauli::Y: return "Y";
        case Pauli::Z: return "Z";
    }
    return "?";
}

namespace {

using Vec2 = std::array<complex, 2>;
using Vec4 = std::array<complex, 4>;

Vec2 apply_pauli(Pauli p, const Vec2& v) {
    const complex i{0.0, 1.0};
    switch (p) {
        case Pauli::I: return v;
        case Pauli::X: return {v[1], v[0]};
        case Pauli::Y: return {-i * v[1], i * v[0]};
        case Pauli::Z: return {v[0], -v[1]};
    }
    return v;
}

// Bell basis in index order |q0 q1> -> 2*q0 + q1; outcome k identifies kPaulis[k].
const std::array<Vec4, 4>& bell_basis() {
    static const double h = 1.0 / std::numbers::sqrt2;
    static const std::array<Vec4, 4> basis{{
        {h, 0, 0, h},   // Phi+ : I
        {0, h, h, 0},   // Psi+ : X
        {0, h, -h, 0},  // Psi- : Y
        {h, 0, 0, -h},  // Phi- : Z
    }};
    return basis;
}

template <std::size_t K>
std::size_t sample_outcome(const std::array<double, K>& probs, double u) {
    double total = 0;
    for (double p : probs) total += p;
    double cum = 0;
    for (std::size_t k = 0; k < K; ++k) {
        cum += probs[k] / total;
        if (u < cum) return k;
    }
    return static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

std::array<double, 4> bell_outcome_probabilities(Pauli channel) {
    const double h = 1.0 / std::numbers::sqrt2;
    // Channel on qubit 0 of (|00> + |11>)/sqrt2.
    const Vec2 on_zero = apply_pauli(channel, {1, 0});
    const Vec2 on_one = apply_pauli(channel, {0, 1});
    Vec4 psi{};
    for (int q0 = 0; q0 < 2; ++q0) {
        psi[2 * q0 + 0] += h * on_zero[q0];
        psi[2 * q0 + 1] += h * on_one[q0];
    }
    std::array<double, 4> probs{};
    for (std::size_t k = 0; k < 4; ++k) {
        complex amp{};
        for (std::size_t i = 0; i < 4; ++i) amp += std::conj(bell_basis()[k][i]) * psi[i];
        probs[k] = std::norm(amp);
    }
    return probs;
}

std::array<double, 2> single_outcome_probabilities(const SingleProbe& probe, Pauli channel) {
    const Vec2 out = apply_pauli(channel, probe.state);
    std::array<double, 2> probs{};
    for (std::size_t o = 0; o < 2; ++o)
        probs[o] = std::norm(std::conj(probe.basis[o][0]) * out[0] + std::conj(probe.basis[o][1]) * out[1]);
    return probs;
}

// Maximum-likelihood channel for each outcome; ties go to the earlier channel.
std::array<Pauli, 2> ml_decisions(const SingleProbe& probe) {
    std::array<Pauli, 2> decision{Pauli::I, Pauli::I};
    std::array<double, 2> best{-1.0, -1.0};
    for (const Pauli c : kPaulis) {
        const auto probs = single_outcome_probabilities(probe, c);
        for (std::size_t o = 0; o < 2; ++o)
            if (probs[o] > best[o] + 1e-15) {
                best[o] = probs[o];
                decision[o] = c;
            }
    }
    return decision;
}

void validate(const SingleProbe& probe) {
    require(std::abs(norm_sq(probe.state) - 1.0) <= 1e-10, ErrorKind::precondition, "probe state must be normalized");
    for (const auto& b : probe.basis)
        require(std::abs(norm_sq(b) - 1.0) <= 1e-10, ErrorKind::precondition, "measurement vectors must be normalized");
    const complex cross = std::conj(probe.basis[0][0]) * probe.basis[1][0] + std::conj(probe.basis[0][1]) * probe.basis[1][1];
    require(std::abs(cross) <= 1e-10, ErrorKind::precondition, "measurement vectors must be orthogonal");
}

}  // namespace

double pauli_discriminate(const Probe& probe, Pauli channel, const MonteCarloPlan& plan) {
    require(plan.trials >= 1, ErrorKind::precondition, "pauli_discriminate: trials must be at least 1");
    Philox4x32 rng(plan.seed, static_cast<std::uint64_t>(channel));
    std::int64_t correct = 0;
    if (std::holds_alternative<BellProbe>(probe)) {
        const auto probs = bell_outcome_probabilities(channel);
        for (std::int64_t t = 0; t < plan.trials; ++t)
            if (kPaulis[sample_outcome(probs, rng.uniform())] == channel) ++correct;
    } else {
        const auto& single = std::get<SingleProbe>(probe);
        validate(single);
        const auto probs = single_outcome_probabilities(single, channel);
        const auto decision = ml_decisions(single);
        for (std::int64_t t = 0; t < plan.trials; ++t)
            if (decision[sample_outcome(probs, rng.uniform())] == channel) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(plan.trials);
}

double pauli_success_uniform(const Probe& probe, const MonteCarloPlan& plan) {
    double s = 0;
    for (const Pauli c : kPaulis) s += pauli_discriminate(probe, c, plan);
    return s / 4.0;
}

double pauli_success_exact(const SingleProbe& probe) {
    validate(probe);
    double s = 0;
    for (std::size_t o = 0; o < 2; ++o) {
        double best = 0;
        for (const Pauli c : kPaulis) best = std::max(best, single_outcome_probabilities(probe, c)[o]);
        s += best;
    }
    return s / 4.0;
}

SingleProbe random_single_probe(Philox4x32& rng) {
    std::normal_distribution<double> gauss;
    auto haar = [&]() {
        Vec2 v{complex{gauss(rng), gauss(rng)}, complex{gauss(rng), gauss(rng)}};
        const double n = std::sqrt(norm_sq(v));
        return Vec2{v[0] / n, v[1] / n};
    };
    SingleProbe p;
    p.state = haar();
    const Vec2 m0 = haar();
    p.basis = {m0, Vec2{-std::conj(m0[1]), std::conj(m0[0])}};
    return p;
}

}  // namespace qmb::qubit
