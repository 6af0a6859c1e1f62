// qmb: command-line front end for the measurement experiments.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qmb/error.hpp"
#include "qmb/runner/acceptance.hpp"
#include "qmb/runner/config.hpp"
#include "qmb/runner/experiments.hpp"

namespace {

constexpr int kExitFailure = 1, kExitUsage = 2, kExitConfig = 3, kExitNumerical = 4;

const std::map<std::string, std::string> kDescriptions{
    {"mz-scaling", "Mach-Zehnder phase error vs photon number (coherent, squeezed, entangled)"},
    {"ghz-scaling", "Monte Carlo phase estimation with independent qubits vs GHZ states"},
    {"frequency-standard", "ion frequency-standard error, independent vs entangled"},
    {"pauli-discrimination", "identify a Pauli channel with a Bell probe vs single qubits"},
    {"sql-trajectory", "repeated position measurement of a free mass against the SQL"},
    {"contractive-window", "time a contractive state spends below the 2 delta^2 hbar/m level"},
    {"timing-scaling", "arrival-time RMSE, classical vs frequency-entangled pulses"},
    {"limits-table", "Planck-scale and Margolus-Levitin bounds"},
};

constexpr const char* kFooter = R"(
Usage: qmb <experiment> [--key value ...]   (or: qmb run <experiment> ...)
       qmb verify [--seed S] [--only 1,3,...]

Each experiment accepts --config FILE (key = value lines), --seed, --out DIR and
its own parameters (see qmb <experiment> --help). Flags override the config file;
QMB_SEED sets the default seed. Outputs: <experiment>.csv, <experiment>.svg and
manifest.txt in --out, each written atomically.

N lists: a,b,c | a..b | a..b:odd | a..b:even | a..b:pow2 | a..b:logK

Exit codes: 0 success, 1 verify failed, 2 usage error (unknown experiment or
command), 3 config error (unknown key, bad value, parameter out of domain),
4 numerical failure (truncation, degenerate operating point, failed cross-check).)";

int exit_code(qmb::ErrorKind kind) {
    using qmb::ErrorKind;
    switch (kind) {
        case ErrorKind::usage: return kExitUsage;
        case ErrorKind::config:
        case ErrorKind::domain:
        case ErrorKind::precondition:
        case ErrorKind::out_of_range: return kExitConfig;
        default: return kExitNumerical;
    }
}

struct ExperimentCommand {
    std::string name;
    CLI::App* app = nullptr;
    std::string config, seed, out;
    std::map<std::string, std::string> values;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && args.front() == "run") args.erase(args.begin());
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector

    CLI::App app{"qmb: quantum-enhanced measurement experiments", "qmb"};
    app.footer(kFooter);
    app.set_version_flag("--version", std::string(qmb::runner::kVersion));
    app.require_subcommand(1);

    std::vector<std::unique_ptr<ExperimentCommand>> commands;
    for (const auto& name : qmb::runner::experiment_names()) {
        auto cmd = std::make_unique<ExperimentCommand>();
        cmd->name = name;
        cmd->app = app.add_subcommand(name, kDescriptions.at(name));
        cmd->app->add_option("--config", cmd->config, "key = value file");
        cmd->app->add_option("--seed", cmd->seed, "64-bit seed (default: QMB_SEED or 0)");
        cmd->app->add_option("--out", cmd->out, "output directory (default: .)");
        for (const auto& spec : qmb::runner::param_specs(name))
            cmd->app->add_option("--" + spec.name, cmd->values[spec.name], spec.help + " [" + spec.default_value + "]");
        commands.push_back(std::move(cmd));
    }

    std::uint64_t verify_seed = 1;
    std::vector<int> only;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite, one line per criterion");
    verify->add_option("--seed", verify_seed, "seed for the Monte Carlo criteria");
    verify->add_option("--only", only, "criterion ids to run")->delimiter(',');

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        bool in_experiment = false;
        for (const auto& cmd : commands) in_experiment = in_experiment || cmd->app->parsed();
        std::cerr << (in_experiment ? "config" : "usage") << " error: " << e.what() << "\n"
                  << "Run 'qmb --help' for usage.\n";
        return in_experiment ? kExitConfig : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            qmb::runner::AcceptanceOptions options;
            options.seed = verify_seed;
            options.only = only;
            const auto report = qmb::runner::run_acceptance(options);
            std::cout << report.text();
            return report.passed() ? 0 : kExitFailure;
        }
        for (const auto& cmd : commands) {
            if (!cmd->app->parsed()) continue;
            qmb::runner::ConfigSources sources;
            if (!cmd->config.empty()) sources.file = cmd->config;
            for (const auto& [key, value] : cmd->values)
                if (cmd->app->get_option("--" + key)->count() > 0) sources.flags[key] = value;
            if (cmd->app->get_option("--seed")->count() > 0) sources.seed = cmd->seed;
            if (cmd->app->get_option("--out")->count() > 0) sources.output_dir = cmd->out;
            if (const char* env = std::getenv("QMB_SEED"); env && *env) sources.env_seed = env;
            const auto paths = qmb::runner::run(qmb::runner::resolve_config(cmd->name, sources));
            std::cout << paths.csv.string() << "\n" << paths.svg.string() << "\n" << paths.manifest.string() << "\n";
            return 0;
        }
    } catch (const qmb::Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
