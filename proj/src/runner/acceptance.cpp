#include "qmb/runner/acceptance.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "qmb/error.hpp"
#include "qmb/fundamental_limits.hpp"
#include "qmb/mass_position.hpp"
#include "qmb/qubit_metrology.hpp"
#include "qmb/rng.hpp"
#include "qmb/runner/experiments.hpp"
#include "qmb/stats.hpp"
#include "qmb/timing.hpp"

namespace qmb::runner {

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Check slope_check(const std::string& name, double slope, double target, double tol) {
    return {name, std::abs(slope - target) <= tol,
            fmt("%.4f", slope) + " (target " + fmt("%.2f", target) + " +- " + fmt("%.2f", tol) + ")"};
}

// Any failure inside a criterion turns into a failed check with the error text.
template <class F>
void guarded(CriterionResult& c, const std::string& name, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        c.checks.push_back({name, false, e.what()});
    }
}

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

CriterionResult shot_noise() {
    CriterionResult c{1, "shot-noise law (coherent Mach-Zehnder)", {}, 0, 30};
    guarded(c, "slope", [&] {
        namespace mz = interferometer;
        const auto ns = parse_n_list("4..1024:log10");
        const auto r = mz::scaling_experiment(mz::Strategy::coherent, ns, mz::default_operating_phase(mz::Strategy::coherent));
        c.checks.push_back(slope_check("slope", r.fit.exponent, -0.5, 0.05));
    });
    return c;
}

CriterionResult squeezed_port() {
    CriterionResult c{2, "squeezed-port law (coherent + squeezed vacuum)", {}, 0, 180};
    guarded(c, "slope", [&] {
        namespace mz = interferometer;
        const std::vector<int> ns{16, 32, 64, 128, 256};
        const auto r = mz::scaling_experiment(mz::Strategy::squeezed, ns, mz::default_operating_phase(mz::Strategy::squeezed));
        c.checks.push_back(slope_check("slope", r.fit.exponent, -0.75, 0.07));
        std::size_t cutoff = 0;
        for (const auto& row : r.rows) cutoff = std::max(cutoff, row.cutoff);
        c.checks.push_back({"cutoff", true, "largest=" + std::to_string(cutoff)});
    });
    return c;
}

CriterionResult heisenberg_optics(const MStatisticsFn& stats) {
    CriterionResult c{3, "Heisenberg law (entangled Mach-Zehnder input)", {}, 0, 60};
    namespace mz = interferometer;
    guarded(c, "slope", [&] {
        const auto ns = parse_n_list("3..41:odd");
        const auto r = mz::scaling_experiment(mz::Strategy::entangled, ns, mz::default_operating_phase(mz::Strategy::entangled));
        std::vector<double> n_plus, err;
        for (const auto& row : r.rows) {
            n_plus.push_back((row.n + 1) / 2.0);
            err.push_back(row.delta_phi);
        }
        auto check = slope_check("slope", r.fit.exponent, -1.0, 0.05);
        check.detail += " (vs N+: " + fmt("%.4f", fit_log_log(n_plus, err).exponent) + ")";
        c.checks.push_back(check);
    });
    guarded(c, "closed_form", [&] {
        double worst = 0;
        int worst_n = 0;
        for (int n = 1; n <= 31; n += 2) {
            const double np = (n + 1) / 2.0;
            const auto state = mz::entangled_input(n, static_cast<std::size_t>((n + 1) / 2));
            for (int k = 0; k < 64; ++k) {
                const double phi = 2.0 * pi * k / 64.0;
                const auto s = stats(state, phi);
                const double mean = -np * std::sin(phi);
                const double var = std::cos(2 * phi) + np * np * std::sin(phi) * std::sin(phi);
                const double e = std::max(std::abs(s.mean - mean) / std::max(1.0, std::abs(mean)),
                                          std::abs(s.variance - var) / std::max(1.0, std::abs(var)));
                if (e > worst) worst = e, worst_n = n;
            }
        }
        c.checks.push_back({"closed_form", worst <= 1e-9,
                            "max_rel_err=" + fmt("%.1e", worst) + (worst > 1e-9 ? " at N=" + std::to_string(worst_n) : "") +
                                " tol 1e-9"});
    });
    return c;
}

CriterionResult heisenberg_qubits(std::uint64_t seed) {
    CriterionResult c{4, "Heisenberg law (GHZ qubits)", {}, 0, 60};
    using qubit::PhaseStrategy;
    auto slope = [&](PhaseStrategy s, const std::vector<int>& ns) {
        std::vector<double> n, e;
        for (int k : ns) {
            const auto r = qubit::estimate_phase_mc(k, s, {2000, seed, qubit::default_true_phi(k, s)});
            if (r.flagged) continue;
            n.push_back(k);
            e.push_back(r.rmse);
        }
        return fit_log_log(n, e).exponent;
    };
    guarded(c, "ghz_slope", [&] {
        c.checks.push_back(slope_check("ghz_slope", slope(PhaseStrategy::ghz, parse_n_list("2..64:pow2")), -1.0, 0.07));
    });
    guarded(c, "independent_slope", [&] {
        c.checks.push_back(slope_check("independent_slope",
                                       slope(PhaseStrategy::independent, parse_n_list("16..4096:pow2")), -0.5, 0.05));
    });
    guarded(c, "explicit_register", [&] {
        double worst = 0;
        for (int n = 1; n <= qubit::kExplicitCheckMaxQubits; ++n)
            for (int k = 0; k < 16; ++k) {
                const double phi = 2.0 * pi * k / 16.0 + 0.1;
                worst = std::max(worst, std::abs(qubit::ghz_probability(n, phi) - qubit::ghz_probability_explicit(n, phi)));
            }
        c.checks.push_back({"explicit_register", worst <= 1e-12, "max_abs_err=" + fmt("%.1e", worst) + " tol 1e-12"});
    });
    return c;
}

CriterionResult frequency_standards() {
    CriterionResult c{5, "frequency standards", {}, 0, 0};
    guarded(c, "ratio", [&] {
        bool ok = true;
        std::string detail;
        for (int n : {1, 4, 100}) {
            const double ratio = qubit::frequency_error(n, 1.0, qubit::IonStrategy::independent) /
                                 qubit::frequency_error(n, 1.0, qubit::IonStrategy::entangled);
            ok = ok && ratio == std::sqrt(static_cast<double>(n));
            detail += (detail.empty() ? "" : " ") + std::string("N=") + std::to_string(n) + ":" + fmt("%.17g", ratio);
        }
        c.checks.push_back({"ratio", ok, detail});
    });
    return c;
}

CriterionResult pauli(std::uint64_t seed) {
    CriterionResult c{6, "Pauli channel discrimination", {}, 0, 0};
    using namespace qubit;
    guarded(c, "bell", [&] {
        double worst = 1.0;
        for (std::uint64_t s : {seed, seed + 1, std::uint64_t{12345}})
            for (const Pauli p : kPaulis) worst = std::min(worst, pauli_discriminate(BellProbe{}, p, {10000, s, 0.0}));
        c.checks.push_back({"bell", worst == 1.0, "min_success=" + fmt("%.6f", worst)});
    });
    guarded(c, "single", [&] {
        Philox4x32 rng(seed, 4);
        double best = 0;
        for (int i = 0; i < 1000; ++i) best = std::max(best, pauli_success_exact(random_single_probe(rng)));
        c.checks.push_back({"single", best < 1.0, "max_success=" + fmt("%.6f", best) + " over 1000 probes"});
    });
    return c;
}

CriterionResult sql_contractive(std::uint64_t seed) {
    CriterionResult c{7, "SQL and contractive states", {}, 0, 30};
    using namespace mass;
    const double m = 1e-18, hbar = codata::hbar;
    guarded(c, "a_sql_minimum", [&] {
        double worst = 0;
        for (double t : {1e-6, 1e-3, 1.0})
            for (double mm : {1e-21, 1e-18, 1.0}) {
                const double bound = sql_variance_bound(t, mm);
                worst = std::max(worst, std::abs(min_uncorrelated_variance(t, mm) - bound) / bound);
            }
        c.checks.push_back({"a_sql_minimum", worst <= 1e-9, "max_rel_err=" + fmt("%.1e", worst)});
    });
    guarded(c, "b_two_time", [&] {
        Philox4x32 rng(seed, 7001);
        std::uniform_real_distribution<double> unit;
        const double scale = hbar * 1e-3 / m;
        int violations = 0;
        for (int i = 0; i < 10000; ++i) {
            const auto g = sample_valid_state(rng, scale * 1e-4, scale * 1e4);
            const double t = std::pow(10.0, -6.0 + 6.0 * unit(rng));
            const double floor = std::pow(hbar * t / (2 * m), 2);
            if (g.s_xx * position_variance_at(g, t, m) < floor * (1 - kHeisenbergTolerance)) ++violations;
        }
        c.checks.push_back({"b_two_time", violations == 0, "violations=" + std::to_string(violations) + "/10000"});
    });
    guarded(c, "c_window", [&] {
        const double delta2 = 1e-3;
        const double level = contractive_level(delta2, m), bound = 4 * delta2;
        Philox4x32 rng(seed, 7002);
        double largest = 0;
        for (int i = 0; i < 10000; ++i)
            largest = std::max(largest, below_level_window(sample_valid_state(rng, level * 1e-2, level * 1e2), level, m));
        const double at_opt =
            below_level_window(contractive_state(delta2, m, optimal_contractive_momentum_variance(delta2, m)), level, m);
        const double eq = std::abs(at_opt - bound) / bound;
        c.checks.push_back({"c_window", largest <= bound * (1 + 1e-9) && eq <= 1e-9,
                            "max_sampled/4d2=" + fmt("%.6f", largest / bound) + " optimum_rel_err=" + fmt("%.1e", eq)});
    });
    guarded(c, "d_repeated", [&] {
        const double t_gap = 1e-3, sigma = std::sqrt(hbar * t_gap / m);
        auto count = [&](Preparation p) {
            const auto rec = repeated_measurement_run(p, t_gap, m, sigma, 20, seed);
            int beaten = 0;
            for (std::size_t k = 0; k < rec.pre_variances.size(); ++k)
                beaten += beats_sql(rec.pre_variances[k], rec.sql_bound_values[k]);
            return beaten;
        };
        const int contractive = count(Preparation::contractive), naive = count(Preparation::naive);
        c.checks.push_back({"d_repeated", contractive >= 1 && naive == 0,
                            "contractive_beaten=" + std::to_string(contractive) + " naive_beaten=" + std::to_string(naive)});
    });
    return c;
}

CriterionResult timing_law(std::uint64_t seed) {
    CriterionResult c{8, "timing (classical vs entangled pulses)", {}, 0, 30};
    guarded(c, "timing", [&] {
        const auto ns = parse_n_list("4..4096:pow2");
        const timing::TimingPlan plan{5000, seed};
        std::vector<double> cl, en;
        double ratio256 = 0;
        for (int n : ns) {
            cl.push_back(timing::arrival_time_rmse({1e9, n, timing::PulseStrategy::classical}, 1e-6, plan).rmse);
            en.push_back(timing::arrival_time_rmse({1e9, n, timing::PulseStrategy::entangled}, 1e-6, plan).rmse);
            if (n == 256) ratio256 = cl.back() / en.back();
        }
        const auto x = as_doubles(ns);
        c.checks.push_back(slope_check("classical", fit_log_log(x, cl).exponent, -0.5, 0.05));
        c.checks.push_back(slope_check("entangled", fit_log_log(x, en).exponent, -1.0, 0.05));
        c.checks.push_back({"ratio256", std::abs(ratio256 / 16.0 - 1.0) <= 0.1,
                            fmt("%.4f", ratio256) + " (target 16 +- 10%)"});
    });
    return c;
}

CriterionResult fundamental(std::uint64_t seed) {
    CriterionResult c{9, "fundamental limits", {}, 0, 0};
    const auto k = limits::PhysicalConstants::codata2018();
    guarded(c, "planck_time", [&] {
        const auto s = fmt("%.3e", k.t_P);
        c.checks.push_back({"planck_time", s == "5.391e-44", "t_P=" + s});
    });
    guarded(c, "cross_identity", [&] {
        Philox4x32 rng(seed, 9001);
        std::uniform_real_distribution<double> expo(-20.0, 20.0);
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            const double R = std::pow(10.0, expo(rng)), T = std::pow(10.0, expo(rng));
            const double lhs = 2 * limits::max_energy_no_blackhole(R, k) * T / (pi * k.hbar);
            const double rhs = limits::max_ops(R, T, k);
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
        c.checks.push_back({"cross_identity", worst <= 1e-10, "max_rel_err=" + fmt("%.1e", worst)});
    });
    guarded(c, "universe_unit", [&] {
        const double v = limits::universe_ops(k.t_P, k);
        c.checks.push_back({"universe_unit", v == 1.0, "universe_ops(t_P)=" + fmt("%.17g", v)});
    });
    return c;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CriterionResult infrastructure(const std::vector<CriterionResult>& earlier, std::uint64_t seed) {
    CriterionResult c{10, "infrastructure (verify end-to-end, deterministic CSV)", {}, 0, 0};
    std::string failing;
    for (const auto& e : earlier)
        if (!e.passed()) failing += (failing.empty() ? "" : ",") + std::to_string(e.id);
    c.checks.push_back({"criteria_1_9", earlier.size() == 9 && failing.empty(),
                        failing.empty() ? "all passed" : "failing: " + failing});
    guarded(c, "determinism", [&] {
        const auto base = std::filesystem::temp_directory_path() / ("qmb-verify-" + std::to_string(::getpid()));
        std::string differing;
        for (const auto& name : experiment_names()) {
            std::string bytes[2];
            for (int rep = 0; rep < 2; ++rep) {
                ConfigSources src;
                src.seed = std::to_string(seed);
                src.output_dir = (base / std::to_string(rep)).string();
                const auto paths = run(resolve_config(name, src));
                bytes[rep] = read_file(paths.csv);
            }
            if (bytes[0].empty() || bytes[0] != bytes[1]) differing += (differing.empty() ? "" : ",") + name;
        }
        std::error_code ec;
        std::filesystem::remove_all(base, ec);
        c.checks.push_back({"determinism", differing.empty(),
                            differing.empty() ? "8 experiments byte-identical" : "differs: " + differing});
    });
    return c;
}

}  // namespace

bool CriterionResult::passed() const {
    if (checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const Check& k) { return k.passed; });
}

const Check* CriterionResult::find(const std::string& name) const {
    for (const auto& k : checks)
        if (k.name == name) return &k;
    return nullptr;
}

bool AcceptanceReport::passed() const {
    return !criteria.empty() &&
           std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed(); });
}

std::string AcceptanceReport::text() const {
    std::string out;
    for (const auto& c : criteria) {
        out += c.passed() ? "PASS" : "FAIL";
        out += " [" + std::to_string(c.id) + "] " + c.title + ":";
        for (std::size_t i = 0; i < c.checks.size(); ++i) {
            const auto& k = c.checks[i];
            out += (i ? "; " : " ") + k.name + (k.passed ? "" : " FAILED") + ": " + k.detail;
        }
        out += '\n';
    }
    out += passed() ? "verify: all criteria passed\n" : "verify: FAILED\n";
    return out;
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options) {
    const MStatisticsFn stats = options.m_statistics
                                    ? options.m_statistics
                                    : [](const fock::TwoModeState& s, double phi) {
                                          return interferometer::m_statistics(s, phi, interferometer::CrossCheck::on);
                                      };
    auto wanted = [&](int id) {
        return options.only.empty() || std::find(options.only.begin(), options.only.end(), id) != options.only.end() ||
               std::find(options.only.begin(), options.only.end(), 10) != options.only.end();
    };
    const std::uint64_t seed = options.seed;
    const std::vector<std::function<CriterionResult()>> suite{
        [] { return shot_noise(); },
        [] { return squeezed_port(); },
        [&] { return heisenberg_optics(stats); },
        [&] { return heisenberg_qubits(seed); },
        [] { return frequency_standards(); },
        [&] { return pauli(seed); },
        [&] { return sql_contractive(seed); },
        [&] { return timing_law(seed); },
        [&] { return fundamental(seed); },
    };

    AcceptanceReport report;
    auto timed = [&](const std::function<CriterionResult()>& f) {
        const auto start = std::chrono::steady_clock::now();
        auto c = f();
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && c.seconds > c.budget_seconds)
            c.checks.push_back({"runtime", false, "exceeded the " + fmt("%.0f", c.budget_seconds) + " s budget"});
        return c;
    };
    for (std::size_t i = 0; i < suite.size(); ++i)
        if (wanted(static_cast<int>(i) + 1)) report.criteria.push_back(timed(suite[i]));
    if (options.only.empty() || std::find(options.only.begin(), options.only.end(), 10) != options.only.end()) {
        const auto earlier = report.criteria;
        report.criteria.push_back(timed([&] { return infrastructure(earlier, seed); }));
    }
    return report;
}

}  // namespace qmb::runner
