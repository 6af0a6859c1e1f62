#pragma once

// The ten acceptance criteria, shared by `qmb verify` and the acceptance test binary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmb/fock.hpp"
#include "qmb/interferometer.hpp"

namespace qmb::runner {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;         // wall time, never printed
    double budget_seconds = 0.0;  // 0: no budget

    bool passed() const;
    const Check* find(const std::string& name) const;
};

using MStatisticsFn = std::function<interferometer::MStatistics(const fock::TwoModeState&, double)>;

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    std::vector<int> only;  // empty: all criteria
    // Simulator under test for the closed-form comparison; replaceable for mutation checks.
    MStatisticsFn m_statistics;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;

    bool passed() const;
    // One line per criterion plus indented check lines; contains no timings.
    std::string text() const;
};

AcceptanceReport run_acceptance(const AcceptanceOptions& options = {});

}  // namespace qmb::runner
