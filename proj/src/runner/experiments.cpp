#include "qmb/runner/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "qmb/error.hpp"
#include "qmb/fundamental_limits.hpp"
#include "qmb/interferometer.hpp"
#include "qmb/mass_position.hpp"
#include "qmb/qubit_metrology.hpp"
#include "qmb/stats.hpp"
#include "qmb/timing.hpp"

namespace qmb::runner {

namespace {

std::string fixed(double v, const char* fmt = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string fit_line(std::string_view label, const ScalingFit& fit) {
    return "fit " + std::string(label) + " slope=" + format_double(fit.exponent) +
           " intercept=" + format_double(fit.intercept) + " residual=" + format_double(fit.residual) +
           " points=" + std::to_string(fit.points);
}

std::int64_t positive_integer(const ExperimentConfig& cfg, const std::string& key) {
    const auto v = cfg.integer(key);
    require(v >= 1, ErrorKind::config, "parameter " + key + " must be at least 1");
    return v;
}

Series reference_power(const std::vector<double>& n, double y0, double exponent, std::string name) {
    Series s{std::move(name), {}, {}, false};
    if (n.empty()) return s;
    for (double x : n) {
        s.x.push_back(x);
        s.y.push_back(y0 * std::pow(x / n.front(), exponent));
    }
    return s;
}

ExperimentOutput mz_scaling(const ExperimentConfig& cfg) {
    namespace mz = interferometer;
    const auto strategy = mz::parse_strategy(cfg.text("strategy"));
    std::string n_text = cfg.text("n");
    if (n_text == "auto") {
        n_text = strategy == mz::Strategy::coherent   ? "4..1024:log10"
                 : strategy == mz::Strategy::squeezed ? "16..256:pow2"
                                                      : "3..41:odd";
    }
    const auto ns = parse_n_list(n_text);
    const double phi_op = cfg.is_auto("phi_op") ? mz::default_operating_phase(strategy) : cfg.number("phi_op");

    mz::ScalingOptions opt;
    opt.fd_step = cfg.number("fd_step");
    opt.eps_trunc = cfg.number("eps_trunc");
    const auto cutoff = cfg.integer("cutoff");
    require(cutoff >= 0, ErrorKind::config, "parameter cutoff must be non-negative");
    opt.cutoff = static_cast<std::size_t>(cutoff);
    opt.squeeze_grid = static_cast<int>(positive_integer(cfg, "squeeze_grid"));
    opt.squeeze_fraction_max = cfg.number("squeeze_fraction_max");
    require(opt.squeeze_fraction_max > 0 && opt.squeeze_fraction_max < 1, ErrorKind::config,
            "parameter squeeze_fraction_max must lie in (0, 1)");

    const auto result = mz::scaling_experiment(strategy, ns, phi_op, opt);

    ExperimentOutput out;
    out.table = CsvTable({"strategy", "N", "phi_op", "mean_M", "var_M", "delta_phi"});
    Series series{std::string(mz::to_string(strategy)), {}, {}};
    for (const auto& r : result.rows) {
        out.table.add_row({std::string(mz::to_string(r.strategy)), std::to_string(r.n), format_double(r.phi_op),
                           format_double(r.mean_M), format_double(r.var_M), format_double(r.delta_phi)});
        series.x.push_back(r.n);
        series.y.push_back(r.delta_phi);
    }
    out.table.add_footer(fit_line(mz::to_string(strategy), result.fit));
    if (strategy == mz::Strategy::entangled) {
        std::vector<double> n_plus, err;
        for (const auto& r : result.rows) {
            n_plus.push_back((r.n + 1) / 2.0);
            err.push_back(r.delta_phi);
        }
        out.table.add_footer(fit_line("entangled_vs_n_plus", fit_log_log(n_plus, err)));
    }
    if (strategy == mz::Strategy::squeezed) {
        for (const auto& r : result.rows)
            out.table.add_footer("optimum N=" + std::to_string(r.n) + " squeeze_fraction=" +
                                 format_double(r.squeeze_fraction) + " cutoff=" + std::to_string(r.cutoff));
    }

    out.plot = {"Mach-Zehnder phase error", "N", "delta phi", true, true, {series}};
    if (!series.x.empty()) {
        out.plot.series.push_back(reference_power(series.x, series.y.front(), -0.5, "N^-1/2"));
        out.plot.series.push_back(reference_power(series.x, series.y.front(), -1.0, "N^-1"));
    }
    return out;
}

ExperimentOutput ghz_scaling(const ExperimentConfig& cfg) {
    using qubit::PhaseStrategy;
    const std::string which = cfg.text("strategy");
    require(which == "both" || which == "independent" || which == "ghz", ErrorKind::config,
            "parameter strategy must be both, independent or ghz");
    const auto trials = positive_integer(cfg, "trials");
    const auto reps = static_cast<int>(positive_integer(cfg, "repetitions"));

    ExperimentOutput out;
    out.table = CsvTable({"strategy", "N", "trials", "true_phi", "rmse"});
    out.plot = {"Qubit phase estimation", "N", "RMSE", true, true, {}};
    auto one = [&](PhaseStrategy s, const std::vector<int>& ns) {
        Series series{std::string(qubit::to_string(s)), {}, {}};
        std::vector<double> fit_n, fit_e;
        for (int n : ns) {
            qubit::MonteCarloPlan plan{trials, cfg.seed, qubit::default_true_phi(n, s)};
            const auto r = qubit::estimate_phase_mc(n, s, plan, reps);
            out.table.add_row({std::string(qubit::to_string(s)), std::to_string(n), std::to_string(r.trials),
                               format_double(r.true_value), format_double(r.rmse)});
            if (r.flagged) {
                out.table.add_footer("flagged " + std::string(qubit::to_string(s)) + " N=" + std::to_string(n) +
                                     " (vanishing law derivative, excluded from fit)");
                continue;
            }
            series.x.push_back(n);
            series.y.push_back(r.rmse);
            fit_n.push_back(n);
            fit_e.push_back(r.rmse);
        }
        if (fit_n.size() >= 2) out.table.add_footer(fit_line(qubit::to_string(s), fit_log_log(fit_n, fit_e)));
        out.plot.series.push_back(std::move(series));
    };
    if (which != "ghz") one(PhaseStrategy::independent, cfg.n_list("n_independent"));
    if (which != "independent") one(PhaseStrategy::ghz, cfg.n_list("n_ghz"));
    out.table.add_footer("repetitions=" + std::to_string(reps) + " (each trial spends N*repetitions qubit-uses)");
    return out;
}

ExperimentOutput frequency_standard(const ExperimentConfig& cfg) {
    using qubit::IonStrategy;
    const double t = cfg.number("t");
    ExperimentOutput out;
    out.table = CsvTable({"N", "t", "independent_error", "entangled_error", "ratio"});
    Series ind{"independent", {}, {}}, ent{"entangled", {}, {}};
    for (int n : cfg.n_list("n")) {
        const double a = qubit::frequency_error(n, t, IonStrategy::independent);
        const double b = qubit::frequency_error(n, t, IonStrategy::entangled);
        out.table.add_row({std::to_string(n), format_double(t), format_double(a), format_double(b),
                           format_double(a / b)});
        ind.x.push_back(n), ind.y.push_back(a);
        ent.x.push_back(n), ent.y.push_back(b);
    }
    out.plot = {"Frequency standard error", "N", "delta omega (rad/s)", true, true, {ind, ent}};
    return out;
}

ExperimentOutput pauli_discrimination(const ExperimentConfig& cfg) {
    using namespace qubit;
    const auto trials = positive_integer(cfg, "trials");
    const auto samples = positive_integer(cfg, "samples");
    const MonteCarloPlan plan{trials, cfg.seed, 0.0};

    ExperimentOutput out;
    out.table = CsvTable({"probe", "channel", "trials", "success"});
    for (const Pauli c : kPaulis)
        out.table.add_row({"bell", std::string(to_string(c)), std::to_string(trials),
                           format_double(pauli_discriminate(BellProbe{}, c, plan))});

    const SingleProbe computational{{complex{1, 0}, complex{0, 0}},
                                    {{{complex{1, 0}, complex{0, 0}}, {complex{0, 0}, complex{1, 0}}}}};
    for (const Pauli c : kPaulis)
        out.table.add_row({"single_z0", std::string(to_string(c)), std::to_string(trials),
                           format_double(pauli_discriminate(computational, c, plan))});
    out.table.add_row({"single_z0", "uniform_exact", "0", format_double(pauli_success_exact(computational))});

    Philox4x32 rng(cfg.seed, 4);
    std::vector<double> success;
    for (std::int64_t i = 0; i < samples; ++i) success.push_back(pauli_success_exact(random_single_probe(rng)));
    const double best = *std::max_element(success.begin(), success.end());
    out.table.add_row({"single_sampled_max", "uniform_exact", std::to_string(samples), format_double(best)});
    out.table.add_footer("single-qubit probes use the maximum-likelihood decision; sampled probes are Haar random");

    std::sort(success.begin(), success.end());
    Series sampled{"random single probes", {}, {}, false}, bell{"Bell probe", {}, {}, false};
    for (std::size_t i = 0; i < success.size(); ++i) {
        sampled.x.push_back(static_cast<double>(i + 1) / static_cast<double>(success.size()));
        sampled.y.push_back(success[i]);
    }
    bell.x = {0.0, 1.0};
    bell.y = {1.0, 1.0};
    out.plot = {"Pauli channel identification", "quantile of sampled probes", "success probability", false, false,
                {sampled, bell}};
    return out;
}

ExperimentOutput sql_trajectory(const ExperimentConfig& cfg) {
    using namespace mass;
    const std::string which = cfg.text("preparation");
    std::vector<Preparation> preps;
    if (which == "all")
        preps = {Preparation::naive, Preparation::contractive, Preparation::momentum_qnd};
    else
        preps = {parse_preparation(which)};
    const double t_gap = cfg.number("t_gap"), m = cfg.number("mass");
    require(t_gap > 0 && m > 0, ErrorKind::config, "parameters t_gap and mass must be positive");
    const double sigma_m = cfg.is_auto("sigma_m") ? std::sqrt(codata::hbar * t_gap / m) : cfg.number("sigma_m");
    const auto n_meas = static_cast<int>(cfg.integer("n_meas"));
    RunOptions options;
    options.initial_spread_ratio = cfg.number("initial_spread_ratio");

    ExperimentOutput out;
    out.table = CsvTable({"preparation", "step", "time", "outcome", "pre_s_xx", "post_s_xx", "sql_bound", "beaten",
                          "control_step"});
    out.plot = {"Pre-measurement variance / SQL", "step", "s_xx m / (hbar t_gap)", false, true, {}};
    for (const auto prep : preps) {
        const auto rec = repeated_measurement_run(prep, t_gap, m, sigma_m, n_meas, cfg.seed, options);
        Series series{std::string(to_string(prep)), {}, {}};
        int beaten = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < rec.times.size(); ++k) {
            const bool b = beats_sql(rec.pre_variances[k], rec.sql_bound_values[k]);
            beaten += b;
            best = std::min(best, rec.pre_variances[k] / rec.sql_bound_values[k]);
            out.table.add_row({std::string(to_string(prep)), std::to_string(k), format_double(rec.times[k]),
                               format_double(rec.outcomes[k]), format_double(rec.pre_variances[k]),
                               format_double(rec.post_variances[k]), format_double(rec.sql_bound_values[k]),
                               b ? "true" : "false", rec.control_step[k] ? "true" : "false"});
            series.x.push_back(static_cast<double>(k));
            series.y.push_back(rec.pre_variances[k] / rec.sql_bound_values[k]);
        }
        out.table.add_footer(std::string(to_string(prep)) + " beaten_steps=" + std::to_string(beaten) +
                             " min_pre_over_sql=" + format_double(best));
        out.plot.series.push_back(std::move(series));
    }
    out.table.add_footer("sigma_m=" + format_double(sigma_m) +
                         "; control_step marks a recorded re-preparation after the measurement");
    out.plot.series.push_back({"SQL", {0.0, static_cast<double>(n_meas - 1)}, {1.0, 1.0}, false});
    return out;
}

ExperimentOutput contractive_window(const ExperimentConfig& cfg) {
    using namespace mass;
    const double delta2 = cfg.number("delta2"), m = cfg.number("mass");
    const auto points = positive_integer(cfg, "points");
    const double lo = cfg.number("ratio_min"), hi = cfg.number("ratio_max");
    require(lo > 0 && hi >= lo, ErrorKind::config, "need 0 < ratio_min <= ratio_max");
    const double level = contractive_level(delta2, m);
    const double s_opt = optimal_contractive_momentum_variance(delta2, m);
    const double bound = 4.0 * delta2;

    ExperimentOutput out;
    out.table = CsvTable({"s_pp", "s_pp_ratio", "s_xp", "window", "bound"});
    Series series{"window / 4 delta^2", {}, {}};
    for (std::int64_t i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        const double ratio = lo * std::pow(hi / lo, f);
        const auto g = contractive_state(delta2, m, ratio * s_opt);
        const double w = below_level_window(g, level, m);
        out.table.add_row({format_double(g.s_pp), format_double(ratio), format_double(g.s_xp), format_double(w),
                           format_double(bound)});
        series.x.push_back(ratio);
        series.y.push_back(w / bound);
    }
    const auto g_opt = contractive_state(delta2, m, s_opt);
    const double w_opt = below_level_window(g_opt, level, m);
    out.table.add_footer("optimum s_pp=" + format_double(s_opt) + " window=" + format_double(w_opt) +
                         " bound=" + format_double(bound) + " level=" + format_double(level));
    out.plot = {"Contractive state: time below 2 delta^2 hbar / m", "s_pp / (m hbar / 4 delta^2)",
                "window / 4 delta^2", true, false, {series}};
    return out;
}

ExperimentOutput timing_scaling(const ExperimentConfig& cfg) {
    using timing::PulseStrategy;
    const std::string which = cfg.text("strategy");
    std::vector<PulseStrategy> strategies;
    if (which == "both")
        strategies = {PulseStrategy::classical, PulseStrategy::entangled};
    else
        strategies = {timing::parse_pulse_strategy(which)};
    const auto ns = cfg.n_list("n");
    const double bandwidth = cfg.number("bandwidth"), true_t = cfg.number("true_t");
    const timing::TimingPlan plan{positive_integer(cfg, "trials"), cfg.seed};

    ExperimentOutput out;
    out.table = CsvTable({"strategy", "N", "bandwidth", "trials", "rmse"});
    out.plot = {"Arrival-time RMSE", "N", "RMSE (s)", true, true, {}};
    std::map<int, std::vector<double>> by_n;
    for (const auto s : strategies) {
        Series series{std::string(timing::to_string(s)), {}, {}};
        std::vector<double> fit_n, fit_e;
        for (int n : ns) {
            const auto r = timing::arrival_time_rmse({bandwidth, n, s}, true_t, plan);
            out.table.add_row({std::string(timing::to_string(s)), std::to_string(n), format_double(bandwidth),
                               std::to_string(r.trials), format_double(r.rmse)});
            series.x.push_back(n);
            series.y.push_back(r.rmse);
            by_n[n].push_back(r.rmse);
        }
        if (ns.size() >= 2) out.table.add_footer(fit_line(timing::to_string(s), fit_log_log(series.x, series.y)));
        out.plot.series.push_back(std::move(series));
    }
    if (strategies.size() == 2)
        for (const auto& [n, v] : by_n)
            out.table.add_footer("ratio N=" + std::to_string(n) + " classical/entangled=" + format_double(v[0] / v[1]) +
                                 " sqrtN=" + format_double(std::sqrt(static_cast<double>(n))));
    return out;
}

ExperimentOutput limits_table(const ExperimentConfig& cfg) {
    const auto k = limits::PhysicalConstants::from(cfg.number("hbar"), cfg.number("c"), cfg.number("G"));
    limits::TableInputs in;
    in.R = cfg.number("R");
    in.T = cfg.number("T");
    in.E = cfg.number("E");
    in.p = cfg.number("p");
    in.lambda = cfg.number("lambda");
    in.n = static_cast<int>(cfg.integer("photons"));
    in.T_universe = cfg.number("T_universe");

    ExperimentOutput out;
    out.table = CsvTable({"quantity", "formula", "inputs", "value", "decimal"});
    for (const auto& row : limits::limits_table(in, k))
        out.table.add_row({row.quantity, row.formula, row.inputs, format_double(row.value), row.decimal});

    Series ops{"max_ops(R, T)", {}, {}, false}, part{"cells x ticks", {}, {}, false};
    for (int e = -35; e <= 27; ++e) {
        const double r = std::pow(10.0, e);
        if (r < k.l_P) continue;
        const auto [cells, ticks] = limits::uniform_partition(r, in.T, k);
        ops.x.push_back(r), ops.y.push_back(limits::max_ops(r, in.T, k));
        part.x.push_back(r), part.y.push_back(cells * ticks);
    }
    out.plot = {"Elementary events in a region of size R over T=" + fixed(in.T, "%g") + " s", "R (m)", "count",
                true, true, {ops, part}};
    return out;
}

using Handler = std::function<ExperimentOutput(const ExperimentConfig&)>;

const std::map<std::string, Handler, std::less<>>& handlers() {
    static const std::map<std::string, Handler, std::less<>> h{
        {"mz-scaling", mz_scaling},
        {"ghz-scaling", ghz_scaling},
        {"frequency-standard", frequency_standard},
        {"pauli-discrimination", pauli_discrimination},
        {"sql-trajectory", sql_trajectory},
        {"contractive-window", contractive_window},
        {"timing-scaling", timing_scaling},
        {"limits-table", limits_table},
    };
    return h;
}

}  // namespace

ExperimentOutput compute(const ExperimentConfig& config) {
    const auto it = handlers().find(config.experiment);
    if (it == handlers().end()) fail(ErrorKind::usage, "unknown experiment '" + config.experiment + "'");
    return it->second(config);
}

std::string manifest_text(const ExperimentConfig& config) {
    std::string out = "# qmb " + std::string(kVersion) + " resolved configuration\n";
    out += "experiment = " + config.experiment + "\n";
    out += "seed = " + std::to_string(config.seed) + "\n";
    out += "out = " + config.output_dir.string() + "\n";
    for (const auto& [key, value] : config.params) out += key + " = " + value + "\n";
    return out;
}

RunArtifacts run(const ExperimentConfig& config) {
    const auto output = compute(config);
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    require(!ec, ErrorKind::config, "cannot create output directory " + config.output_dir.string());
    RunArtifacts paths{config.output_dir / (config.experiment + ".csv"), config.output_dir / (config.experiment + ".svg"),
                       config.output_dir / "manifest.txt"};
    write_atomically(paths.csv, output.table.str());
    write_atomically(paths.svg, render_svg(output.plot));
    write_atomically(paths.manifest, manifest_text(config));
    return paths;
}

}  // namespace qmb::runner
