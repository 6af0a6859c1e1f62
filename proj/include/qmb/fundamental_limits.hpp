#pragma once

// Margolus-Levitin tick, Planck-scale counting bounds and de Broglie wavelengths (SI).

#include <string>
#include <utility>
#include <vector>

#include "qmb/constants.hpp"

namespace qmb::limits {

struct PhysicalConstants {
    double hbar = codata::hbar;
    double c = codata::c;
    double G = codata::G;
    double t_P = 0.0;  // sqrt(hbar G / c^5)
    double l_P = 0.0;  // c t_P

    static PhysicalConstants codata2018();
    // Derives t_P and l_P; throws a domain error for non-positive inputs.
    static PhysicalConstants from(double hbar, double c, double G);
};

double min_tick(double energy, const PhysicalConstants& k = PhysicalConstants::codata2018());
double max_ops(double R, double T, const PhysicalConstants& k = PhysicalConstants::codata2018());
double max_energy_no_blackhole(double R, const PhysicalConstants& k = PhysicalConstants::codata2018());
double max_quanta(double R, const PhysicalConstants& k = PhysicalConstants::codata2018());
// (cells, ticks per clock), real valued.
std::pair<double, double> uniform_partition(double R, double T,
                                            const PhysicalConstants& k = PhysicalConstants::codata2018());
double universe_ops(double T, const PhysicalConstants& k = PhysicalConstants::codata2018());
double de_broglie(double p, const PhysicalConstants& k = PhysicalConstants::codata2018());
double n_photon_wavelength(double lambda_single, int n);

struct TableInputs {
    double R = 1.0;           // m
    double T = 1.0;           // s
    double E = 1.0;           // J
    double p = 1e-27;         // kg m / s
    double lambda = 500e-9;   // m
    int n = 2;
    double T_universe = 4.35e17;  // s
};

struct TableRow {
    std::string quantity;
    std::string formula;
    std::string inputs;
    double value = 0.0;
    std::string decimal;  // same formula evaluated with 50 decimal digits
};

std::vector<TableRow> limits_table(const TableInputs& in,
                                   const PhysicalConstants& k = PhysicalConstants::codata2018());

}  // namespace qmb::limits
