// Physical constants and unit conversions.
//
// Internal unit system: time in ps, Rabi frequencies in rad/ps, energies in
// meV.  Every meV <-> rad/ps conversion goes through hbar below so there is a
// single source of truth.

#pragma once

#include <numbers>

namespace pumpprobe {

namespace constants {

// hbar in meV*ps (CODATA).
inline constexpr double hbar = 0.6582119569;

inline constexpr double pi = std::numbers::pi;

}  // namespace constants

// Rabi frequency (rad/ps) of a drive with energy hbar*Omega given in meV.
inline constexpr double mev_to_rad_per_ps(double energy_mev) {
  return energy_mev / constants::hbar;
}

// Energy (meV) corresponding to an angular frequency in rad/ps.
inline constexpr double rad_per_ps_to_mev(double omega) {
  return omega * constants::hbar;
}

// Pulse areas are quoted in units of pi throughout the config surface.
inline constexpr double area_pi_to_rad(double area_pi) {
  return area_pi * constants::pi;
}

}  // namespace pumpprobe
