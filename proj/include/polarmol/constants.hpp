#pragma once

// Physical constants (CODATA 2018) and unit conversions between the
// canonical units used throughout the library:
//   length  bohr
//   energy  cm^-1 (wavenumber, E/(hc))
//   dipole  debye
//   mass    unified atomic mass unit
//
// Everything else (SI, atomic units) appears only at conversion boundaries.

#include <numbers>

namespace polarmol::constants {

inline constexpr double pi = std::numbers::pi;

// SI
inline constexpr double planck = 6.62607015e-34;           // J s
inline constexpr double hbar = planck / (2.0 * pi);         // J s
inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double elementary_charge = 1.602176634e-19;     // C
inline constexpr double electron_mass = 9.1093837015e-31;        // kg
inline constexpr double atomic_mass_unit = 1.66053906660e-27;    // kg
inline constexpr double bohr_radius = 5.29177210903e-11;         // m
inline constexpr double hartree_energy = 4.3597447222071e-18;    // J

// Derived conversion factors
inline constexpr double debye = 1.0e-21 / speed_of_light;        // C m
inline constexpr double wavenumber_to_joule = planck * speed_of_light * 100.0;
inline constexpr double hartree_to_wavenumber = hartree_energy / wavenumber_to_joule;
inline constexpr double amu_to_electron_mass = atomic_mass_unit / electron_mass;
inline constexpr double angstrom_to_bohr = 1.0e-10 / bohr_radius;
inline constexpr double au_dipole_to_debye = elementary_charge * bohr_radius / debye;
inline constexpr double wavenumber_to_hz = speed_of_light * 100.0;  // cm^-1 -> Hz

}  // namespace polarmol::constants

namespace polarmol::units {

constexpr double hartree_to_cm1(double e) { return e * constants::hartree_to_wavenumber; }
constexpr double cm1_to_hartree(double e) { return e / constants::hartree_to_wavenumber; }
constexpr double angstrom_to_bohr(double r) { return r * constants::angstrom_to_bohr; }
constexpr double bohr_to_angstrom(double r) { return r / constants::angstrom_to_bohr; }
constexpr double au_to_debye(double d) { return d * constants::au_dipole_to_debye; }
constexpr double debye_to_au(double d) { return d / constants::au_dipole_to_debye; }
constexpr double amu_to_me(double m) { return m * constants::amu_to_electron_mass; }
constexpr double cm1_to_joule(double e) { return e * constants::wavenumber_to_joule; }
constexpr double joule_to_cm1(double e) { return e / constants::wavenumber_to_joule; }
constexpr double debye_to_si(double d) { return d * constants::debye; }
constexpr double mhz_to_cm1(double f) { return f * 1.0e6 / constants::wavenumber_to_hz; }
constexpr double cm1_to_mhz(double e) { return e * constants::wavenumber_to_hz * 1.0e-6; }

// Vacuum wavelength [nm] <-> wavenumber [cm^-1]; exact reciprocal.
constexpr double nm_to_cm1(double nm) { return 1.0e7 / nm; }
constexpr double cm1_to_nm(double nu) { return 1.0e7 / nu; }

}  // namespace polarmol::units
