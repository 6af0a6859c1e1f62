#pragma once

#include <filesystem>
#include <string>

#include "qmb/runner/config.hpp"
#include "qmb/runner/csv.hpp"
#include "qmb/runner/svg.hpp"

namespace qmb::runner {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentOutput {
    CsvTable table{{}};
    Plot plot;
};

struct RunArtifacts {
    std::filesystem::path csv;
    std::filesystem::path svg;
    std::filesystem::path manifest;
};

// Runs the experiment without touching the filesystem.
ExperimentOutput compute(const ExperimentConfig& config);

// The resolved configuration in config-file syntax, so it can be replayed with --config.
std::string manifest_text(const ExperimentConfig& config);

// compute() plus <experiment>.csv, <experiment>.svg and manifest.txt in config.output_dir.
RunArtifacts run(const ExperimentConfig& config);

}  // namespace qmb::runner
