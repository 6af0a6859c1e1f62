#include "qmb/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qmb/error.hpp"

namespace qmb::fock {

namespace {

constexpr double kNormSlack = 1e-9;

double norm_squared_of(std::span<const complex> v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return s;
}

void check_leakage(double norm_sq, double eps, const char* what) {
    const double leakage = 1.0 - norm_sq;
    if (!(leakage < eps)) {
        fail(ErrorKind::truncation, std::string(what) + ": cutoff too small, truncation leakage " +
                                        std::to_string(leakage) + " >= " + std::to_string(eps));
    }
}

}  // namespace

FockVector::FockVector(std::vector<complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    require(!amplitudes_.empty(), ErrorKind::invariant, "FockVector needs at least one amplitude");
    require(norm_squared() <= 1.0 + kNormSlack, ErrorKind::invariant, "FockVector norm exceeds 1");
}

double FockVector::norm_squared() const { return norm_squared_of(amplitudes_); }

double FockVector::number_expectation() const {
    double s = 0.0;
    for (std::size_t n = 0; n < amplitudes_.size(); ++n) s += static_cast<double>(n) * std::norm(amplitudes_[n]);
    return s / norm_squared();
}

FockVector FockVector::padded(std::size_t new_cutoff) const {
    require(new_cutoff >= cutoff(), ErrorKind::shape, "FockVector::padded cannot shrink the cutoff");
    auto amps = amplitudes_;
    amps.resize(new_cutoff + 1, complex{});
    return FockVector(std::move(amps));
}

TwoModeState::TwoModeState(std::size_t cutoff, std::vector<complex> amplitudes)
    : cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
    require(amplitudes_.size() == side() * side(), ErrorKind::invariant,
            "TwoModeState grid must be (cutoff+1) x (cutoff+1)");
    require(norm_squared() <= 1.0 + kNormSlack, ErrorKind::invariant, "TwoModeState norm exceeds 1");
}

TwoModeState TwoModeState::vacuum(std::size_t cutoff) {
    std::vector<complex> amps((cutoff + 1) * (cutoff + 1));
    amps[0] = 1.0;
    return TwoModeState(cutoff, std::move(amps));
}

complex TwoModeState::amplitude(std::size_t na, std::size_t nb) const {
    require(na <= cutoff_ && nb <= cutoff_, ErrorKind::out_of_range, "TwoModeState index beyond cutoff");
    return amplitudes_[index(na, nb)];
}

double TwoModeState::norm_squared() const { return norm_squared_of(amplitudes_); }

double TwoModeState::number_expectation_a() const {
    double s = 0.0;
    for (std::size_t na = 0; na <= cutoff_; ++na)
        for (std::size_t nb = 0; nb <= cutoff_; ++nb) s += static_cast<double>(na) * std::norm(amplitudes_[index(na, nb)]);
    return s / norm_squared();
}

double TwoModeState::number_expectation_b() const {
    double s = 0.0;
    for (std::size_t na = 0; na <= cutoff_; ++na)
        for (std::size_t nb = 0; nb <= cutoff_; ++nb) s += static_cast<double>(nb) * std::norm(amplitudes_[index(na, nb)]);
    return s / norm_squared();
}

std::size_t TwoModeState::max_total_photons() const {
    std::size_t best = 0;
    for (std::size_t na = 0; na <= cutoff_; ++na)
        for (std::size_t nb = 0; nb <= cutoff_; ++nb)
            if (amplitudes_[index(na, nb)] != complex{}) best = std::max(best, na + nb);
    return best;
}

TwoModeState TwoModeState::padded(std::size_t new_cutoff) const {
    require(new_cutoff >= cutoff_, ErrorKind::shape, "TwoModeState::padded cannot shrink the cutoff");
    const std::size_t s = new_cutoff + 1;
    std::vector<complex> amps(s * s);
    for (std::size_t na = 0; na <= cutoff_; ++na)
        for (std::size_t nb = 0; nb <= cutoff_; ++nb) amps[na * s + nb] = amplitudes_[index(na, nb)];
    return TwoModeState(new_cutoff, std::move(amps));
}

Observable::Observable(int mode_arity, std::size_t cutoff, std::vector<complex> matrix)
    : arity_(mode_arity), cutoff_(cutoff), matrix_(std::move(matrix)) {
    require(arity_ == 1 || arity_ == 2, ErrorKind::invariant, "Observable arity must be 1 or 2");
    dim_ = arity_ == 1 ? cutoff + 1 : (cutoff + 1) * (cutoff + 1);
    require(matrix_.size() == dim_ * dim_, ErrorKind::shape, "Observable matrix has the wrong size");
    require(hermiticity_defect() <= kHermiticityTolerance, ErrorKind::invariant, "Observable is not Hermitian");
}

double Observable::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs(matrix_[i * dim_ + j] - std::conj(matrix_[j * dim_ + i])));
    return worst;
}

std::vector<complex> Observable::apply(std::span<const complex> state) const {
    require(state.size() == dim_, ErrorKind::shape, "Observable::apply dimension mismatch");
    std::vector<complex> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        complex acc{};
        const complex* row = &matrix_[i * dim_];
        for (std::size_t j = 0; j < dim_; ++j)
            if (row[j] != complex{}) acc += row[j] * state[j];
        out[i] = acc;
    }
    return out;
}

std::vector<double> log_factorials(std::size_t max_n) {
    std::vector<double> lf(max_n + 1, 0.0);
    for (std::size_t n = 1; n <= max_n; ++n) lf[n] = lf[n - 1] + std::log(static_cast<double>(n));
    return lf;
}

std::size_t default_cutoff(double mean_photons) {
    require(mean_photons >= 0, ErrorKind::domain, "default_cutoff: negative mean photon number");
    return static_cast<std::size_t>(std::ceil(mean_photons + 6.0 * std::sqrt(mean_photons) + 10.0));
}

std::size_t squeezed_cutoff(double r, double eps) {
    require(r >= 0, ErrorKind::domain, "squeezed_cutoff: r must be non-negative");
    if (r == 0.0) return 0;
    const double t = std::tanh(r);
    // p_{2n} = sech(r) * tanh(r)^{2n} * (2n)! / (4^n (n!)^2), accumulated by ratio.
    double p = 1.0 / std::cosh(r);
    double sum = p;
    std::size_t n = 0;
    while (!(1.0 - sum < eps)) {
        ++n;
        p *= t * t * static_cast<double>(2 * n - 1) / static_cast<double>(2 * n);
        sum += p;
        require(n < 2'000'000, ErrorKind::truncation, "squeezed_cutoff: squeezing too strong");
    }
    return 2 * n;
}

FockVector coherent_state(complex alpha, std::size_t cutoff, double eps) {
    std::vector<complex> amps(cutoff + 1);
    const double mag = std::abs(alpha);
    if (mag == 0.0) {
        amps[0] = 1.0;
        return FockVector(std::move(amps));
    }
    const auto lf = log_factorials(cutoff);
    const double log_mag = std::log(mag);
    const double arg = std::arg(alpha);
    for (std::size_t n = 0; n <= cutoff; ++n) {
        const double dn = static_cast<double>(n);
        const double log_abs = -0.5 * mag * mag + dn * log_mag - 0.5 * lf[n];
        amps[n] = std::polar(std::exp(log_abs), dn * arg);
    }
    FockVector v(std::move(amps));
    check_leakage(v.norm_squared(), eps, "coherent_state");
    return v;
}

FockVector squeezed_vacuum(double r, double theta, std::size_t cutoff, double eps) {
    require(r >= 0, ErrorKind::domain, "squeezed_vacuum: r must be non-negative");
    std::vector<complex> amps(cutoff + 1);
    if (r == 0.0) {
        amps[0] = 1.0;
        return FockVector(std::move(amps));
    }
    const auto lf = log_factorials(cutoff);
    const double log_sech = -std::log(std::cosh(r));
    const double log_tanh = std::log(std::tanh(r));
    for (std::size_t n = 0; 2 * n <= cutoff; ++n) {
        const double dn = static_cast<double>(n);
        const double log_abs = 0.5 * log_sech + dn * log_tanh + 0.5 * lf[2 * n] - dn * std::log(2.0) - lf[n];
        amps[2 * n] = std::polar(std::exp(log_abs), dn * (theta + std::numbers::pi));
    }
    FockVector v(std::move(amps));
    check_leakage(v.norm_squared(), eps, "squeezed_vacuum");
    return v;
}

FockVector fock_state(std::size_t n, std::size_t cutoff) {
    require(n <= cutoff, ErrorKind::out_of_range,
            "fock_state: n = " + std::to_string(n) + " exceeds cutoff " + std::to_string(cutoff));
    std::vector<complex> amps(cutoff + 1);
    amps[n] = 1.0;
    return FockVector(std::move(amps));
}

TwoModeState tensor(const FockVector& a, const FockVector& b) {
    require(a.cutoff() == b.cutoff(), ErrorKind::shape, "tensor: cutoff mismatch");
    const std::size_t s = a.dimension();
    std::vector<complex> amps(s * s);
    for (std::size_t na = 0; na < s; ++na)
        for (std::size_t nb = 0; nb < s; ++nb) amps[na * s + nb] = a.amplitude(na) * b.amplitude(nb);
    return TwoModeState(a.cutoff(), std::move(amps));
}

namespace {

Observable diagonal_two_mode(std::size_t cutoff, double wa, double wb) {
    const std::size_t s = cutoff + 1, dim = s * s;
    std::vector<complex> m(dim * dim);
    for (std::size_t na = 0; na < s; ++na)
        for (std::size_t nb = 0; nb < s; ++nb) {
            const std::size_t i = na * s + nb;
            m[i * dim + i] = wa * static_cast<double>(na) + wb * static_cast<double>(nb);
        }
    return Observable(2, cutoff, std::move(m));
}

}  // namespace

Observable number_operator(std::size_t cutoff) {
    const std::size_t dim = cutoff + 1;
    std::vector<complex> m(dim * dim);
    for (std::size_t n = 0; n < dim; ++n) m[n * dim + n] = static_cast<double>(n);
    return Observable(1, cutoff, std::move(m));
}

Observable number_operator_a(std::size_t cutoff) { return diagonal_two_mode(cutoff, 1.0, 0.0); }
Observable number_operator_b(std::size_t cutoff) { return diagonal_two_mode(cutoff, 0.0, 1.0); }
Observable total_number_operator(std::size_t cutoff) { return diagonal_two_mode(cutoff, 1.0, 1.0); }

Observable hopping_operator(std::size_t cutoff) {
    const std::size_t s = cutoff + 1, dim = s * s;
    std::vector<complex> m(dim * dim);
    // a^dag b |na, nb> = sqrt((na+1) nb) |na+1, nb-1>
    for (std::size_t na = 0; na + 1 < s; ++na)
        for (std::size_t nb = 1; nb < s; ++nb) {
            const std::size_t from = na * s + nb, to = (na + 1) * s + (nb - 1);
            const double v = std::sqrt(static_cast<double>((na + 1) * nb));
            m[to * dim + from] += v;
            m[from * dim + to] += v;
        }
    return Observable(2, cutoff, std::move(m));
}

Observable combine(const Observable& x, double cx, const Observable& y, double cy) {
    require(x.mode_arity() == y.mode_arity() && x.cutoff() == y.cutoff(), ErrorKind::shape,
            "combine: observable shapes differ");
    const std::size_t dim = x.dimension();
    std::vector<complex> m(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m[i * dim + j] = cx * x(i, j) + cy * y(i, j);
    return Observable(x.mode_arity(), x.cutoff(), std::move(m));
}

namespace {

Moments moments_of(const Observable& obs, std::span<const complex> psi) {
    const double norm_sq = norm_squared_of(psi);
    require(norm_sq > 0, ErrorKind::invariant, "expectation of the zero state");
    require(obs.hermiticity_defect() <= kHermiticityTolerance, ErrorKind::invariant, "observable is not Hermitian");
    const auto o_psi = obs.apply(psi);
    complex mean{};
    for (std::size_t i = 0; i < psi.size(); ++i) mean += std::conj(psi[i]) * o_psi[i];
    mean /= norm_sq;
    const double scale = std::max(1.0, std::abs(mean.real()));
    require(std::abs(mean.imag()) <= 1e-10 * scale, ErrorKind::invariant, "expectation value is not real");
    // <O^2> = |O psi|^2 for Hermitian O.
    const double second = norm_squared_of(o_psi) / norm_sq;
    return {mean.real(), second - mean.real() * mean.real()};
}

}  // namespace

Moments expectation_and_variance(const Observable& obs, const FockVector& state) {
    require(obs.mode_arity() == 1 && obs.dimension() == state.dimension(), ErrorKind::shape,
            "expectation_and_variance: observable/state dimension mismatch");
    return moments_of(obs, state.amplitudes());
}

Moments expectation_and_variance(const Observable& obs, const TwoModeState& state) {
    require(obs.mode_arity() == 2 && obs.cutoff() == state.cutoff(), ErrorKind::shape,
            "expectation_and_variance: observable/state dimension mismatch");
    return moments_of(obs, state.amplitudes());
}

}  // namespace qmb::fock
