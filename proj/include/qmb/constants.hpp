#pragma once

#include <numbers>

// CODATA 2018 exact / recommended values, SI units.
namespace qmb::codata {

inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 299792458.0;         // m / s
inline constexpr double G = 6.67430e-11;         // m^3 / (kg s^2)

}  // namespace qmb::codata

namespace qmb {

inline constexpr double pi = std::numbers::pi;

}  // namespace qmb
