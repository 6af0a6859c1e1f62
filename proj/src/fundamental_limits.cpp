#include "qmb/fundamental_limits.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qmb/error.hpp"

namespace qmb::limits {

namespace {

using Decimal = boost::multiprecision::cpp_dec_float_50;

void positive(double v, const char* what) {
    require(v > 0 && std::isfinite(v), ErrorKind::domain, std::string(what) + " must be positive");
}

// Formulas shared by the double and the 50-digit evaluation.
template <class Num>
struct Formulas {
    Num hbar, c, G, t_P, l_P, pi;

    Num min_tick(Num E) const { return pi * hbar / (2 * E); }
    Num max_ops(Num R, Num T) const { return (T / t_P) * (R / l_P) / pi; }
    Num max_energy(Num R) const { return R * c * c * c * c / (2 * G); }
    Num max_quanta(Num R) const { return R * R / (pi * l_P * l_P); }
    Num cells(Num R) const { return pow(R / l_P, Num(1.5)); }
    Num ticks(Num T) const { return sqrt(T / t_P); }
    Num universe_ops(Num T) const { return (T / t_P) * (T / t_P); }
    Num de_broglie(Num p) const { return 2 * pi * hbar / p; }
};

Decimal exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return Decimal(std::string(buf, res.ptr));
}

Formulas<Decimal> decimal_formulas(const PhysicalConstants& k) {
    const Decimal hbar = exact(k.hbar), c = exact(k.c), G = exact(k.G);
    const Decimal t_P = sqrt(hbar * G / pow(c, 5));
    return {hbar, c, G, t_P, c * t_P, boost::math::constants::pi<Decimal>()};
}

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_decimal(const Decimal& v) {
    std::ostringstream os;
    os.precision(30);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

PhysicalConstants PhysicalConstants::from(double hbar, double c, double G) {
    positive(hbar, "hbar");
    positive(c, "c");
    positive(G, "G");
    PhysicalConstants k;
    k.hbar = hbar;
    k.c = c;
    k.G = G;
    k.t_P = std::sqrt(hbar * G / std::pow(c, 5));
    k.l_P = c * k.t_P;
    return k;
}

PhysicalConstants PhysicalConstants::codata2018() { return from(codata::hbar, codata::c, codata::G); }

double min_tick(double energy, const PhysicalConstants& k) {
    positive(energy, "energy");
    return pi * k.hbar / (2.0 * energy);
}

double max_ops(double R, double T, const PhysicalConstants& k) {
    positive(R, "R");
    positive(T, "T");
    return (T / k.t_P) * (R / k.l_P) / pi;
}

double max_energy_no_blackhole(double R, const PhysicalConstants& k) {
    positive(R, "R");
    return R * std::pow(k.c, 4) / (2.0 * k.G);
}

double max_quanta(double R, const PhysicalConstants& k) {
    positive(R, "R");
    return R * R / (pi * k.l_P * k.l_P);
}

std::pair<double, double> uniform_partition(double R, double T, const PhysicalConstants& k) {
    positive(R, "R");
    positive(T, "T");
    return {std::pow(R / k.l_P, 1.5), std::sqrt(T / k.t_P)};
}

double universe_ops(double T, const PhysicalConstants& k) {
    positive(T, "T");
    const double ratio = T / k.t_P;
    return ratio * ratio;
}

double de_broglie(double p, const PhysicalConstants& k) {
    positive(p, "momentum");
    return 2.0 * pi * k.hbar / p;
}

double n_photon_wavelength(double lambda_single, int n) {
    positive(lambda_single, "wavelength");
    require(n >= 1, ErrorKind::domain, "photon number must be at least 1");
    return lambda_single / n;
}

std::vector<TableRow> limits_table(const TableInputs& in, const PhysicalConstants& k) {
    const auto d = decimal_formulas(k);
    const std::string R = "R=" + shortest(in.R), T = "T=" + shortest(in.T);
    const auto [cells, ticks] = uniform_partition(in.R, in.T, k);
    std::vector<TableRow> rows;
    rows.push_back({"t_P", "sqrt(hbar*G/c^5)", "", k.t_P, to_decimal(d.t_P)});
    rows.push_back({"l_P", "c*t_P", "", k.l_P, to_decimal(d.l_P)});
    rows.push_back({"min_tick", "pi*hbar/(2*E)", "E=" + shortest(in.E), min_tick(in.E, k),
                    to_decimal(d.min_tick(exact(in.E)))});
    rows.push_back({"max_ops", "(T/t_P)*(R/l_P)/pi", R + ";" + T, max_ops(in.R, in.T, k),
                    to_decimal(d.max_ops(exact(in.R), exact(in.T)))});
    rows.push_back({"max_energy_no_blackhole", "R*c^4/(2*G)", R, max_energy_no_blackhole(in.R, k),
                    to_decimal(d.max_energy(exact(in.R)))});
    rows.push_back({"max_quanta", "R^2/(pi*l_P^2)", R, max_quanta(in.R, k),
                    to_decimal(d.max_quanta(exact(in.R)))});
    rows.push_back({"partition_cells", "(R/l_P)^(3/2)", R, cells, to_decimal(d.cells(exact(in.R)))});
    rows.push_back({"partition_ticks", "(T/t_P)^(1/2)", T, ticks, to_decimal(d.ticks(exact(in.T)))});
    rows.push_back({"universe_ops", "(T/t_P)^2", "T=" + shortest(in.T_universe), universe_ops(in.T_universe, k),
                    to_decimal(d.universe_ops(exact(in.T_universe)))});
    rows.push_back({"de_broglie", "2*pi*hbar/p", "p=" + shortest(in.p), de_broglie(in.p, k),
                    to_decimal(d.de_broglie(exact(in.p)))});
    rows.push_back({"n_photon_wavelength", "lambda/n", "lambda=" + shortest(in.lambda) + ";n=" + std::to_string(in.n),
                    n_photon_wavelength(in.lambda, in.n), to_decimal(exact(in.lambda) / in.n)});
    return rows;
}

}  // namespace qmb::limits
