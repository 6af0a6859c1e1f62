// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <iostream>

#include "qmb/runner/acceptance.hpp"

int main() {
    const auto report = qmb::runner::run_acceptance();
    std::cout << report.text();
    return report.passed() ? 0 : 1;
}
