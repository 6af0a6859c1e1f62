#pragma once

// Experiment configuration: a strict key-value file, flag overrides and
// per-experiment parameter tables with defaults.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmb::runner {

struct ParamSpec {
    std::string name;
    std::string default_value;
    std::string help;
};

const std::vector<std::string>& experiment_names();
bool is_experiment(std::string_view name);
// Throws a usage error for unknown experiments.
const std::vector<ParamSpec>& param_specs(std::string_view experiment);

struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> params;  // every key of the table, resolved
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = ".";

    const std::string& text(const std::string& key) const;
    bool is_auto(const std::string& key) const { return text(key) == "auto"; }
    double number(const std::string& key) const;
    std::int64_t integer(const std::string& key) const;
    std::vector<int> n_list(const std::string& key) const;
};

struct ConfigSources {
    std::optional<std::filesystem::path> file;
    std::map<std::string, std::string> flags;
    std::optional<std::string> seed;        // --seed
    std::optional<std::string> output_dir;  // --out
    std::optional<std::string> env_seed;    // QMB_SEED
};

// Precedence: flags, then the config file, then QMB_SEED (seed only), then defaults.
// The file may also carry `experiment`, `seed` and `out`.
ExperimentConfig resolve_config(std::string_view experiment, const ConfigSources& sources);

// `key = value` per line; `#` starts a comment. Duplicate keys are rejected.
std::map<std::string, std::string> parse_config_text(std::string_view text);
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

std::uint64_t parse_seed(std::string_view text);
double parse_number(std::string_view key, std::string_view text);
std::int64_t parse_integer(std::string_view key, std::string_view text);

// `a,b,c`, `a..b`, `a..b:odd`, `a..b:even`, `a..b:pow2` or `a..b:logK`
// (K log-spaced integers, rounded, duplicates dropped). Result is sorted and unique.
std::vector<int> parse_n_list(std::string_view text);

}  // namespace qmb::runner
