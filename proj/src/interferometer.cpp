#include "qmb/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qmb/error.hpp"

namespace qmb::interferometer {

using fock::complex;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Creation-operator map of the Fig. 2 splitter.
const complex kAtoA{kInvSqrt2, 0.0};
const complex kAtoB{0.0, kInvSqrt2};
const complex kBtoA{0.0, kInvSqrt2};
const complex kBtoB{kInvSqrt2, 0.0};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TwoModeState beam_splitter(const TwoModeState& state) {
    const std::size_t cin = state.cutoff();
    const std::size_t n_max = state.max_total_photons();
    const std::size_t cout = std::max(cin, n_max);
    const std::size_t side = cout + 1;
    std::vector<complex> out(side * side);
    out[0] = state.amplitude(0, 0);

    std::vector<double> sqrt_n(n_max + 2);
    for (std::size_t i = 0; i < sqrt_n.size(); ++i) sqrt_n[i] = std::sqrt(static_cast<double>(i));

    // prev/cur hold the block transform column-major: entry [k * size + j] is the
    // amplitude of output |j, N-j> for input |k, N-k>. Column k of block N is one
    // creation operator applied to a column of block N-1: a^dag on |k-1, N-k> or
    // b^dag on |k, N-k-1>, whichever has the larger normalizer, which keeps the
    // per-step gain below sqrt(2).
    std::vector<complex> prev{complex{1.0, 0.0}};
    std::vector<complex> cur;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const std::size_t size = n + 1;
        cur.assign(size * size, complex{});
        for (std::size_t k = 0; k <= n; ++k) {
            const bool via_a = 2 * k >= n;
            const complex* src = via_a ? &prev[(k - 1) * n] : &prev[k * n];
            const complex to_a = via_a ? kAtoA : kBtoA;
            const complex to_b = via_a ? kAtoB : kBtoB;
            const double scale = 1.0 / (via_a ? sqrt_n[k] : sqrt_n[n - k]);
            complex* col = &cur[k * size];
            for (std::size_t j = 0; j < n; ++j) {
                if (src[j] == complex{}) continue;
                const complex v = src[j] * scale;
                col[j + 1] += to_a * (sqrt_n[j + 1] * v);
                col[j] += to_b * (sqrt_n[n - j] * v);
            }
        }
        const std::size_t k_lo = n > cin ? n - cin : 0;
        const std::size_t k_hi = std::min(n, cin);
        for (std::size_t k = k_lo; k <= k_hi; ++k) {
            const complex c = state.amplitude(k, n - k);
            if (c == complex{}) continue;
            const complex* col = &cur[k * size];
            for (std::size_t j = 0; j <= n; ++j) out[j * side + (n - j)] += col[j] * c;
        }
        prev.swap(cur);
    }
    return TwoModeState(cout, std::move(out));
}

TwoModeState phase_shift(const TwoModeState& state, double phi) {
    const std::size_t side = state.side();
    std::vector<complex> out(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t nb = 0; nb < side; ++nb) {
        const complex factor = std::polar(1.0, -phi * static_cast<double>(nb));
        for (std::size_t na = 0; na < side; ++na) out[na * side + nb] *= factor;
    }
    return TwoModeState(state.cutoff(), std::move(out));
}

TwoModeState mach_zehnder(const TwoModeState& state_in, double phi) {
    return beam_splitter(phase_shift(beam_splitter(state_in), phi));
}

TwoModeState entangled_input(int n, std::size_t cutoff) {
    require(n >= 1 && n % 2 == 1, ErrorKind::precondition,
            "entangled_input: N must be odd so that (N +- 1)/2 are integers, got " + std::to_string(n));
    const auto n_plus = static_cast<std::size_t>((n + 1) / 2);
    const auto n_minus = static_cast<std::size_t>((n - 1) / 2);
    require(n_plus <= cutoff, ErrorKind::out_of_range,
            "entangled_input: N+ = " + std::to_string(n_plus) + " exceeds cutoff " + std::to_string(cutoff));
    const std::size_t side = cutoff + 1;
    std::vector<complex> amps(side * side);
    amps[n_plus * side + n_minus] = kInvSqrt2;
    amps[n_minus * side + n_plus] = kInvSqrt2;
    return TwoModeState(cutoff, std::move(amps));
}

MMoments::MMoments(const TwoModeState& state) {
    // D = a^dag a - b^dag b and X = a^dag b + b^dag a applied to psi on a grid one
    // wider than the state, so X psi is exact even at the cutoff edge.
    const std::size_t c = state.cutoff();
    const std::size_t in_side = c + 1;
    const std::size_t ext = c + 2;
    const auto psi = state.amplitudes();
    std::vector<complex> x_psi(ext * ext);
    for (std::size_t na = 0; na <= c; ++na) {
        for (std::size_t nb = 0; nb <= c; ++nb) {
            const complex a = psi[na * in_side + nb];
            if (a == complex{}) continue;
            const double dna = static_cast<double>(na), dnb = static_cast<double>(nb);
            norm_ += std::norm(a);
            const double d = dna - dnb;
            pd_ += d * std::norm(a);
            dd_ += d * d * std::norm(a);
            if (nb >= 1) x_psi[(na + 1) * ext + (nb - 1)] += std::sqrt((dna + 1.0) * dnb) * a;
            if (na >= 1) x_psi[(na - 1) * ext + (nb + 1)] += std::sqrt(dna * (dnb + 1.0)) * a;
        }
    }
    require(norm_ > 0, ErrorKind::invariant, "m_statistics of the zero state");
    for (std::size_t na = 0; na < ext; ++na) {
        for (std::size_t nb = 0; nb < ext; ++nb) {
            const complex xv = x_psi[na * ext + nb];
            if (xv == complex{}) continue;
            xx_ += std::norm(xv);
            if (na <= c && nb <= c) {
                const complex a = psi[na * in_side + nb];
                const double d = static_cast<double>(na) - static_cast<double>(nb);
                px_ += (std::conj(a) * xv).real();
                dx_ += d * (std::conj(a) * xv).real();
            }
        }
    }
}

MStatistics MMoments::at(double phi) const {
    const double cs = std::cos(phi), sn = std::sin(phi);
    const double mean = (cs * pd_ - sn * px_) / norm_;
    const double second = (cs * cs * dd_ + sn * sn * xx_ - 2.0 * cs * sn * dx_) / norm_;
    return {mean, second - mean * mean};
}

MStatistics m_statistics_input_route(const TwoModeState& state, double phi) { return MMoments(state).at(phi); }

MStatistics m_statistics_output_route(const TwoModeState& state, double phi) {
    const auto out = mach_zehnder(state, phi);
    const std::size_t side = out.side();
    const auto amps = out.amplitudes();
    double norm = 0, first = 0, second = 0;
    for (std::size_t nc = 0; nc < side; ++nc) {
        for (std::size_t nd = 0; nd < side; ++nd) {
            const double p = std::norm(amps[nc * side + nd]);
            const double m = static_cast<double>(nd) - static_cast<double>(nc);
            norm += p;
            first += m * p;
            second += m * m * p;
        }
    }
    require(norm > 0, ErrorKind::invariant, "m_statistics of the zero state");
    const double mean = first / norm;
    return {mean, second / norm - mean * mean};
}

MStatistics m_statistics(const TwoModeState& state, double phi, CrossCheck check) {
    const auto fast = m_statistics_input_route(state, phi);
    if (check == CrossCheck::on) {
        const auto slow = m_statistics_output_route(state, phi);
        if (!close(fast.mean, slow.mean, kRouteTolerance) || !close(fast.variance, slow.variance, kRouteTolerance)) {
            fail(ErrorKind::consistency, "m_statistics: input-basis route (" + std::to_string(fast.mean) + ", " +
                                             std::to_string(fast.variance) + ") disagrees with output route (" +
                                             std::to_string(slow.mean) + ", " + std::to_string(slow.variance) + ")");
        }
    }
    return fast;
}

PhaseSensitivity phase_error(const TwoModeState& state, double phi, double fd_step, CrossCheck check) {
    require(fd_step > 0, ErrorKind::precondition, "phase_error: fd_step must be positive");
    const MMoments moments(state);
    const auto centre = check == CrossCheck::on ? m_statistics(state, phi, check) : moments.at(phi);
    const double derivative = (moments.at(phi + fd_step).mean - moments.at(phi - fd_step).mean) / (2.0 * fd_step);
    if (!(std::abs(derivative) > kDerivativeFloor)) {
        fail(ErrorKind::degenerate, "phase_error: |d<M>/dphi| = " + std::to_string(std::abs(derivative)) +
                                        " at phi = " + std::to_string(phi) + " is below the derivative floor");
    }
    const double var = std::max(centre.variance, 0.0);
    return {phi, centre.mean, centre.variance, std::sqrt(var) / std::abs(derivative)};
}

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::coherent: return "coherent";
        case Strategy::squeezed: return "squeezed";
        case Strategy::entangled: return "entangled";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "coherent") return Strategy::coherent;
    if (name == "squeezed" || name == "coherent+squeezed") return Strategy::squeezed;
    if (name == "entangled") return Strategy::entangled;
    fail(ErrorKind::config, "unknown interferometer strategy '" + std::string(name) + "'");
}

double default_operating_phase(Strategy s) { return s == Strategy::entangled ? 1e-3 : std::numbers::pi / 2.0; }

namespace {

ScalingRow coherent_row(int n, double phi_op, const ScalingOptions& opt) {
    const double mean_n = static_cast<double>(n);
    const std::size_t cutoff = opt.cutoff ? opt.cutoff : fock::default_cutoff(mean_n);
    const auto a = fock::coherent_state(std::sqrt(mean_n), cutoff, opt.eps_trunc);
    const auto state = fock::tensor(a, fock::fock_state(0, cutoff));
    const auto check = cutoff <= opt.cross_check_max_cutoff ? CrossCheck::on : CrossCheck::off;
    const auto s = phase_error(state, phi_op, opt.fd_step, check);
    return {Strategy::coherent, n, phi_op, s.mean_M, s.var_M, s.delta_phi, 0.0, cutoff};
}

ScalingRow squeezed_row(int n, double phi_op, const ScalingOptions& opt) {
    require(opt.squeeze_grid >= 2, ErrorKind::precondition, "squeeze grid needs at least two points");
    require(opt.squeeze_fraction_max > 0 && opt.squeeze_fraction_max < 0.5, ErrorKind::precondition,
            "squeeze_fraction_max must lie in (0, 0.5)");
    const double total = static_cast<double>(n);
    ScalingRow best{Strategy::squeezed, n, phi_op, 0, 0, std::numeric_limits<double>::infinity(), 0, 0};
    for (int g = 0; g < opt.squeeze_grid; ++g) {
        const double fraction = opt.squeeze_fraction_max * g / (opt.squeeze_grid - 1);
        const double squeezed_n = fraction * total;
        const double coherent_n = total - squeezed_n;
        const double r = std::asinh(std::sqrt(squeezed_n));
        std::size_t cutoff = opt.cutoff;
        if (cutoff == 0) cutoff = std::max(fock::default_cutoff(coherent_n), fock::squeezed_cutoff(r, opt.eps_trunc));
        const auto a = fock::coherent_state(std::sqrt(coherent_n), cutoff, opt.eps_trunc);
        const auto b = fock::squeezed_vacuum(r, opt.squeeze_theta, cutoff, opt.eps_trunc);
        const auto state = fock::tensor(a, b);
        const auto check = cutoff <= opt.cross_check_max_cutoff ? CrossCheck::on : CrossCheck::off;
        try {
            const auto s = phase_error(state, phi_op, opt.fd_step, check);
            if (s.delta_phi < best.delta_phi) best = {Strategy::squeezed, n, phi_op, s.mean_M, s.var_M, s.delta_phi, fraction, cutoff};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::degenerate) throw;
        }
    }
    if (!std::isfinite(best.delta_phi)) {
        fail(ErrorKind::degenerate, "squeezed strategy: every grid point is degenerate at N = " + std::to_string(n));
    }
    return best;
}

ScalingRow entangled_row(int n, double phi_op, const ScalingOptions& opt) {
    const std::size_t cutoff = opt.cutoff ? opt.cutoff : static_cast<std::size_t>((n + 1) / 2);
    const auto state = entangled_input(n, cutoff);
    const auto check = 2 * cutoff <= opt.cross_check_max_cutoff ? CrossCheck::on : CrossCheck::off;
    const auto s = phase_error(state, phi_op, opt.fd_step, check);
    return {Strategy::entangled, n, phi_op, s.mean_M, s.var_M, s.delta_phi, 0.0, cutoff};
}

}  // namespace

ScalingResult scaling_experiment(Strategy strategy, std::span<const int> n_list, double phi_op,
                                 const ScalingOptions& options) {
    require(n_list.size() >= 4, ErrorKind::precondition, "scaling_experiment: need at least 4 values of N");
    const auto [lo, hi] = std::minmax_element(n_list.begin(), n_list.end());
    require(*lo >= 1, ErrorKind::precondition, "scaling_experiment: N must be positive");
    require(std::log10(static_cast<double>(*hi) / *lo) >= 1.0, ErrorKind::precondition,
            "scaling_experiment: N values must span at least one decade");
    require(std::is_sorted(n_list.begin(), n_list.end()) &&
                std::adjacent_find(n_list.begin(), n_list.end()) == n_list.end(),
            ErrorKind::precondition, "scaling_experiment: N values must be strictly increasing");

    ScalingResult result;
    for (const int n : n_list) {
        switch (strategy) {
            case Strategy::coherent: result.rows.push_back(coherent_row(n, phi_op, options)); break;
            case Strategy::squeezed: result.rows.push_back(squeezed_row(n, phi_op, options)); break;
            case Strategy::entangled: result.rows.push_back(entangled_row(n, phi_op, options)); break;
        }
    }
    std::vector<double> xs, ys;
    for (const auto& row : result.rows) {
        xs.push_back(row.n);
        ys.push_back(row.delta_phi);
    }
    result.fit = fit_log_log(xs, ys);
    return result;
}

}  // namespace qmb::interferometer
