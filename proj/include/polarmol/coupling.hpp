#pragma once

// Angular weights, polarization decomposition and radial matrix elements
// between rovibrational levels.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "rovib.hpp"
#include "wigner.hpp"

namespace polarmol {

/// Light polarization as a superposition of spherical components q.
class Polarization {
 public:
  using Component = std::pair<int, std::complex<double>>;

  Polarization() : Polarization("sigma_z", {{0, 1.0}}) {}

  static Polarization sigma_z() { return Polarization("sigma_z", {{0, 1.0}}); }
  static Polarization sigma_x() {
    const double s = 1.0 / std::sqrt(2.0);
    return Polarization("sigma_x", {{-1, {s, 0.0}}, {1, {-s, 0.0}}});
  }
  static Polarization sigma_y() {
    const double s = 1.0 / std::sqrt(2.0);
    return Polarization("sigma_y", {{-1, {0.0, s}}, {1, {0.0, s}}});
  }
  static Polarization spherical(int q) {
    if (q < -1 || q > 1) throw ConfigError("polarization: q must be -1, 0 or +1");
    return Polarization("spherical(" + std::to_string(q) + ")", {{q, 1.0}});
  }

  /// Accepts sigma_x, sigma_y, sigma_z, sigma_plus, sigma_minus, pi.
  static Polarization parse(const std::string& name) {
    if (name == "sigma_x") return sigma_x();
    if (name == "sigma_y") return sigma_y();
    if (name == "sigma_z" || name == "pi") return sigma_z();
    if (name == "sigma_plus") return spherical(1);
    if (name == "sigma_minus") return spherical(-1);
    throw ConfigError("unknown polarization '" + name + "'");
  }

  const std::string& name() const { return name_; }
  const std::vector<Component>& components() const { return components_; }

  /// |amplitude|^2 of component q (0 if absent).
  double weight(int q) const {
    double w = 0.0;
    for (const auto& [cq, amp] : components_)
      if (cq == q) w += std::norm(amp);
    return w;
  }

 private:
  Polarization(std::string name, std::vector<Component> c) : name_(std::move(name)), components_(std::move(c)) {}
  std::string name_;
  std::vector<Component> components_;
};

/// Squared angular matrix element of the q-th spherical component of the
/// unit dipole between Hund's case (c) states |omega J M> -> |omega' J' M'>.
/// For omega <-> omega' = 1 the dipole curve is taken as the total
/// perpendicular moment, so weights over all (q, J', M') sum to one.
inline double angular_weight(int J, int M, int Jp, int Mp, int q, int omega, int omegap) {
  if (omega < 0 || omega > 1 || omegap < 0 || omegap > 1) return 0.0;
  if (J < omega || Jp < omegap) return 0.0;
  if (std::abs(M) > J || std::abs(Mp) > Jp || std::abs(q) > 1) return 0.0;
  if (Mp != M + q) return 0.0;
  const double lab = wigner3j(Jp, 1, J, -Mp, q, M);
  const double mol = wigner3j(Jp, 1, J, -omegap, omegap - omega, omega);
  return (2.0 * J + 1.0) * (2.0 * Jp + 1.0) * lab * lab * mol * mol;
}

/// Angular weight for polarization `pol`, summed incoherently over its
/// spherical components (and hence over final M').
inline double angular_weight(int J, int M, int Jp, const Polarization& pol, int omega, int omegap) {
  double w = 0.0;
  for (const auto& [q, amp] : pol.components()) w += std::norm(amp) * angular_weight(J, M, Jp, M + q, q, omega, omegap);
  return w;
}

/// sum over (q, M) of the weight for emission from (J, M=0) to J_lower.
inline double emission_branch_weight(int J, int omega, int J_lower, int omega_lower) {
  double w = 0.0;
  for (int q = -1; q <= 1; ++q) w += angular_weight(J, 0, J_lower, q, q, omega, omega_lower);
  return w;
}

namespace detail {

inline void require_same_grid(const RovibLevel& a, const RovibLevel& b) {
  if (!(a.grid == b.grid) || a.wavefunction.size() != b.wavefunction.size())
    throw std::invalid_argument("levels are on different radial grids");
}

}  // namespace detail

/// Samples of a dipole curve on the grid nodes.
inline std::vector<double> sample_dipole(const DipoleCurve& dip, const RadialGrid& grid) {
  std::vector<double> d(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) d[i] = dip(grid.node(i));
  return d;
}

inline double vibronic_dipole(const RovibLevel& initial, const RovibLevel& final_level,
                              const std::vector<double>& dipole_on_grid) {
  detail::require_same_grid(initial, final_level);
  if (dipole_on_grid.size() != initial.wavefunction.size())
    throw std::invalid_argument("dipole samples do not match the grid");
  double sum = 0.0;
  for (std::size_t i = 0; i < dipole_on_grid.size(); ++i)
    sum += final_level.wavefunction[i] * dipole_on_grid[i] * initial.wavefunction[i];
  return sum * initial.grid.spacing();
}

/// <f| d(R) |i> by grid quadrature [debye].
inline double vibronic_dipole(const RovibLevel& initial, const RovibLevel& final_level, const DipoleCurve& dip) {
  detail::require_same_grid(initial, final_level);
  return vibronic_dipole(initial, final_level, sample_dipole(dip, initial.grid));
}

inline double overlap(const RovibLevel& a, const RovibLevel& b) {
  detail::require_same_grid(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.wavefunction.size(); ++i) sum += a.wavefunction[i] * b.wavefunction[i];
  return sum * a.grid.spacing();
}

/// |<f|i>|^2.
inline double franck_condon(const RovibLevel& initial, const RovibLevel& final_level) {
  const double s = overlap(initial, final_level);
  return s * s;
}

/// Spontaneous emission rate [1/s] for transition energy [cm^-1] and
/// transition dipole [debye], before angular factors.
inline double einstein_a(double delta_e_cm1, double dipole_debye) {
  using namespace constants;
  const double omega = 2.0 * pi * wavenumber_to_hz * delta_e_cm1;
  const double d = units::debye_to_si(dipole_debye);
  return omega * omega * omega * d * d /
         (3.0 * pi * vacuum_permittivity * hbar * speed_of_light * speed_of_light * speed_of_light);
}

struct Linewidth {
  double gamma_mhz = 0.0;
  double decay_rate = 0.0;  // total A [1/s]
  bool fallback = false;    // true when default_gamma was used
};

/// gamma_f = sum A(f -> l) / (2 pi) over every lower level l reachable via a
/// dipole curve, with rotational branch weights. Falls back to the dataset's
/// default_gamma when no dipole curve touches the level's state.
inline Linewidth natural_linewidth(const RovibLevel& level, LevelCache& cache) {
  const auto& ds = cache.dataset();
  const auto curves = ds.dipoles_touching(level.state);
  if (curves.empty()) return {ds.default_gamma, 2.0 * constants::pi * ds.default_gamma * 1.0e6, true};

  const int omega = ds.state(level.state).omega;
  double total_a = 0.0;
  for (const DipoleCurve* dip : curves) {
    const std::string& other = dip->bra() == level.state ? dip->ket() : dip->bra();
    const int omega_l = ds.state(other).omega;
    const auto d_grid = sample_dipole(*dip, cache.grid());
    for (int Jl = level.J - 1; Jl <= level.J + 1; ++Jl) {
      if (Jl < omega_l) continue;
      const double branch = emission_branch_weight(level.J, omega, Jl, omega_l);
      if (branch <= 0.0) continue;
      for (const auto& lower : cache.get(other, Jl).levels) {
        const double de = level.energy - lower.energy;
        if (!(de > 0.0)) continue;
        const double d = vibronic_dipole(lower, level, d_grid);
        total_a += einstein_a(de, d) * branch;
      }
    }
  }
  return {total_a / (2.0 * constants::pi) * 1.0e-6, total_a, false};
}

}  // namespace polarmol
