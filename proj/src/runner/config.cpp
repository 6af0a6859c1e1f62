#include "qmb/runner/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qmb/error.hpp"

namespace qmb::runner {

namespace {

const std::map<std::string, std::vector<ParamSpec>, std::less<>>& tables() {
    static const std::map<std::string, std::vector<ParamSpec>, std::less<>> t{
        {"mz-scaling",
         {{"strategy", "coherent", "coherent | squeezed (coherent+squeezed) | entangled"},
          {"n", "auto", "photon numbers; auto picks a per-strategy default"},
          {"phi_op", "auto", "operating phase in rad; auto: pi/2, or 1e-3 for entangled"},
          {"fd_step", "1e-5", "finite-difference step for d<M>/dphi"},
          {"eps_trunc", "1e-8", "largest tolerated Fock truncation leakage"},
          {"cutoff", "0", "Fock cutoff per mode; 0 picks one per N"},
          {"squeeze_grid", "33", "number of squeezed-photon fractions scanned"},
          {"squeeze_fraction_max", "0.125", "largest squeezed-photon fraction scanned"}}},
        {"ghz-scaling",
         {{"strategy", "both", "both | independent | ghz"},
          {"n_independent", "16..4096:pow2", "qubit numbers for independent qubits"},
          {"n_ghz", "2..64:pow2", "qubit numbers for GHZ states"},
          {"trials", "2000", "Monte Carlo trials per N"},
          {"repetitions", "100", "repetitions per trial (each uses N qubits)"}}},
        {"frequency-standard",
         {{"n", "1,4,100", "ion numbers"}, {"t", "1", "interrogation time in s"}}},
        {"pauli-discrimination",
         {{"trials", "10000", "shots per channel"}, {"samples", "1000", "random single-qubit probes"}}},
        {"sql-trajectory",
         {{"preparation", "all", "all | naive | contractive | momentum_qnd"},
          {"t_gap", "1e-3", "time between measurements in s"},
          {"mass", "1e-18", "kg"},
          {"sigma_m", "auto", "pointer resolution in m; auto: sqrt(hbar t_gap / m)"},
          {"n_meas", "20", "measurements per run"},
          {"initial_spread_ratio", "4", "initial s_xx in units of hbar t_gap / m"}}},
        {"contractive-window",
         {{"delta2", "1e-3", "delta^2 in s"},
          {"mass", "1e-18", "kg"},
          {"points", "64", "momentum variances scanned"},
          {"ratio_min", "0.6", "smallest s_pp relative to m hbar / (4 delta^2)"},
          {"ratio_max", "20", "largest s_pp relative to m hbar / (4 delta^2)"}}},
        {"timing-scaling",
         {{"strategy", "both", "both | classical | entangled"},
          {"n", "4..4096:pow2", "photon numbers"},
          {"bandwidth", "1e9", "rad/s"},
          {"trials", "5000", "Monte Carlo trials per N"},
          {"true_t", "1e-6", "true arrival time in s"}}},
        {"limits-table",
         {{"R", "1", "region size in m"},
          {"T", "1", "duration in s"},
          {"E", "1", "clock energy in J"},
          {"p", "1e-27", "momentum in kg m/s"},
          {"lambda", "5e-7", "single-photon wavelength in m"},
          {"photons", "2", "photons sharing the wavelength"},
          {"T_universe", "4.35e17", "age used for the universe count, s"},
          {"hbar", "1.054571817e-34", "J s"},
          {"c", "299792458", "m/s"},
          {"G", "6.6743e-11", "m^3/(kg s^2)"}}},
    };
    return t;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::int64_t to_int(std::string_view text, std::string_view what) {
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    require(res.ec == std::errc() && res.ptr == end && !text.empty(), ErrorKind::config,
            "bad integer '" + std::string(text) + "' in " + std::string(what));
    return v;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"mz-scaling",     "ghz-scaling",        "frequency-standard",
                                                "pauli-discrimination", "sql-trajectory", "contractive-window",
                                                "timing-scaling", "limits-table"};
    return names;
}

bool is_experiment(std::string_view name) { return tables().find(name) != tables().end(); }

const std::vector<ParamSpec>& param_specs(std::string_view experiment) {
    const auto it = tables().find(experiment);
    if (it == tables().end()) fail(ErrorKind::usage, "unknown experiment '" + std::string(experiment) + "'");
    return it->second;
}

const std::string& ExperimentConfig::text(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) fail(ErrorKind::config, "no parameter '" + key + "' for " + experiment);
    return it->second;
}

double ExperimentConfig::number(const std::string& key) const { return parse_number(key, text(key)); }
std::int64_t ExperimentConfig::integer(const std::string& key) const { return parse_integer(key, text(key)); }
std::vector<int> ExperimentConfig::n_list(const std::string& key) const { return parse_n_list(text(key)); }

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        require(eq != std::string::npos, ErrorKind::config,
                "config line " + std::to_string(lineno) + ": expected key = value");
        const auto key = trim(std::string_view(body).substr(0, eq));
        const auto value = trim(std::string_view(body).substr(eq + 1));
        require(!key.empty(), ErrorKind::config, "config line " + std::to_string(lineno) + ": empty key");
        require(out.emplace(key, value).second, ErrorKind::config, "config key '" + key + "' given twice");
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::config, "cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::uint64_t parse_seed(std::string_view text) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    require(res.ec == std::errc() && res.ptr == end && !text.empty(), ErrorKind::config,
            "seed must be an unsigned 64-bit integer, got '" + std::string(text) + "'");
    return v;
}

double parse_number(std::string_view key, std::string_view text) {
    double v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    require(res.ec == std::errc() && res.ptr == end && !text.empty() && std::isfinite(v), ErrorKind::config,
            "parameter " + std::string(key) + ": bad number '" + std::string(text) + "'");
    return v;
}

std::int64_t parse_integer(std::string_view key, std::string_view text) {
    return to_int(text, "parameter " + std::string(key));
}

std::vector<int> parse_n_list(std::string_view text) {
    const std::string what = "N list '" + std::string(text) + "'";
    std::set<int> values;
    const auto range = text.find("..");
    if (range == std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto comma = std::min(text.find(',', start), text.size());
            values.insert(static_cast<int>(to_int(trim(text.substr(start, comma - start)), what)));
            start = comma + 1;
        }
    } else {
        const auto colon = text.find(':', range);
        const auto lo = to_int(trim(text.substr(0, range)), what);
        const auto hi = to_int(trim(text.substr(range + 2, colon == std::string_view::npos ? text.npos
                                                                                         : colon - range - 2)),
                               what);
        require(lo <= hi, ErrorKind::config, what + ": empty range");
        require(hi <= 1'000'000, ErrorKind::config, what + ": N too large");
        const std::string mode = colon == std::string_view::npos ? "" : trim(text.substr(colon + 1));
        if (mode.empty() || mode == "odd" || mode == "even") {
            for (auto n = lo; n <= hi; ++n) {
                if ((mode == "odd" && n % 2 == 0) || (mode == "even" && n % 2 != 0)) continue;
                values.insert(static_cast<int>(n));
            }
        } else if (mode == "pow2") {
            for (std::int64_t p = 1; p <= hi; p *= 2)
                if (p >= lo) values.insert(static_cast<int>(p));
        } else if (mode.rfind("log", 0) == 0) {
            const auto k = to_int(mode.substr(3), what);
            require(k >= 2, ErrorKind::config, what + ": log spacing needs at least two points");
            require(lo >= 1, ErrorKind::config, what + ": log spacing needs N >= 1");
            const double a = std::log(static_cast<double>(lo)), b = std::log(static_cast<double>(hi));
            for (std::int64_t i = 0; i < k; ++i)
                values.insert(static_cast<int>(std::lround(std::exp(a + (b - a) * static_cast<double>(i) / (k - 1)))));
        } else {
            fail(ErrorKind::config, what + ": unknown spacing '" + mode + "'");
        }
    }
    require(!values.empty(), ErrorKind::config, what + " is empty");
    require(*values.begin() >= 1, ErrorKind::config, what + ": N must be at least 1");
    return {values.begin(), values.end()};
}

ExperimentConfig resolve_config(std::string_view experiment, const ConfigSources& sources) {
    const auto& specs = param_specs(experiment);
    ExperimentConfig cfg;
    cfg.experiment = std::string(experiment);
    for (const auto& s : specs) cfg.params[s.name] = s.default_value;

    auto known = [&](const std::string& key) {
        return std::any_of(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.name == key; });
    };

    std::optional<std::string> seed = sources.env_seed;
    if (sources.file) {
        for (const auto& [key, value] : read_config_file(*sources.file)) {
            if (key == "experiment") {
                require(value == experiment, ErrorKind::config,
                        "config file is for experiment '" + value + "', not '" + std::string(experiment) + "'");
            } else if (key == "seed") {
                seed = value;
            } else if (key == "out") {
                cfg.output_dir = value;
            } else {
                require(known(key), ErrorKind::config, "unknown key '" + key + "' for " + cfg.experiment);
                cfg.params[key] = value;
            }
        }
    }
    for (const auto& [key, value] : sources.flags) {
        require(known(key), ErrorKind::config, "unknown key '" + key + "' for " + cfg.experiment);
        cfg.params[key] = value;
    }
    if (sources.seed) seed = sources.seed;
    if (sources.output_dir) cfg.output_dir = *sources.output_dir;
    cfg.seed = seed ? parse_seed(*seed) : 0;
    return cfg;
}

}  // namespace qmb::runner
