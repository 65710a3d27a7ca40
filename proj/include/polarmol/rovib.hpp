#pragma once

// Bound rovibrational levels from a sinc-DVR (uniform Fourier grid)
// Hamiltonian with the centrifugal term hbar^2 J(J+1) / (2 mu R^2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <lapacke.h>

#include "constants.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "grid.hpp"

namespace polarmol {

/// Guard band below the dissociation asymptote for counting a level as bound.
inline constexpr double kBoundGuard = 1.0e-6;  // cm^-1

struct RovibLevel {
  std::string state;
  int v = 0;
  int J = 0;
  double energy = 0.0;  // cm^-1
  RadialGrid grid;
  std::vector<double> wavefunction;  // sum psi^2 h = 1
  std::optional<double> gamma;       // MHz, filled in by the coupling layer
};

struct RadialSolution {
  std::vector<RovibLevel> levels;
  /// Set when no eigenvalue fell below the asymptote guard band.
  bool no_bound_levels = false;
};

/// hbar^2 / (2 mu R^2) in cm^-1 for mu in amu and R in bohr.
inline double centrifugal_factor(double reduced_mass_amu, double R) {
  return constants::hartree_to_wavenumber / (2.0 * units::amu_to_me(reduced_mass_amu) * R * R);
}

/// Sign changes between significant samples (|psi| > 1e-6 max|psi|).
inline int count_nodes(const std::vector<double>& psi) {
  double peak = 0.0;
  for (double x : psi) peak = std::max(peak, std::abs(x));
  const double floor = 1.0e-6 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double x : psi) {
    if (std::abs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++nodes;
    last_sign = s;
  }
  return nodes;
}

namespace detail {

inline void fix_sign(std::vector<double>& psi) {
  double peak = 0.0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (std::abs(psi[i]) > peak) peak = std::abs(psi[i]), argmax = i;
  const double floor = 1.0e-3 * peak;
  std::size_t anchor = argmax;
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) {
    const double a = std::abs(psi[i]);
    if (a > floor && a >= std::abs(psi[i - 1]) && a >= std::abs(psi[i + 1])) {
      anchor = i;
      break;
    }
  }
  if (psi[anchor] < 0.0)
    for (double& x : psi) x = -x;
}

inline RadialSolution solve_rigid(const MoleculeDataset& ds, const ElectronicState& st, int J,
                                  const RadialGrid& grid, std::size_t max_levels) {
  RadialSolution out;
  if (max_levels == 0 || (st.rigid_j_max && J > *st.rigid_j_max)) {
    out.no_bound_levels = true;
    return out;
  }
  const std::size_t k = grid.nearest_node(*st.rigid_r_e);
  const double R = grid.node(k);
  RovibLevel level;
  level.state = st.label;
  level.v = 0;
  level.J = J;
  level.energy = ds.potential(st.label)(R) + J * (J + 1.0) * centrifugal_factor(ds.reduced_mass, R);
  level.grid = grid;
  level.wavefunction.assign(grid.n, 0.0);
  level.wavefunction[k] = 1.0 / std::sqrt(grid.spacing());
  out.levels.push_back(std::move(level));
  return out;
}

}  // namespace detail

/// Dense symmetric matrix, row-major.
struct SymmetricMatrix {
  std::size_t n = 0;
  std::vector<double> data;
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

/// Assembles the sinc-DVR Hamiltonian [cm^-1] for one (state, J).
inline SymmetricMatrix dvr_hamiltonian(const MoleculeDataset& ds, const std::string& state, int J,
                                       const RadialGrid& grid) {
  const auto& pot = ds.potential(state);
  const std::size_t n = grid.n;
  const double h = grid.spacing();
  const double mu = units::amu_to_me(ds.reduced_mass);
  const double t0 = constants::hartree_to_wavenumber / (2.0 * mu * h * h);
  const double pi2 = constants::pi * constants::pi;
  const double jj = static_cast<double>(J) * (J + 1.0);

  SymmetricMatrix H{n, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double R = grid.node(i);
    H(i, i) = t0 * pi2 / 3.0 + pot(R) + jj * centrifugal_factor(ds.reduced_mass, R);
    for (std::size_t j = 0; j < i; ++j) {
      const double d = static_cast<double>(i - j);
      const double t = t0 * 2.0 / (d * d) * (((i - j) % 2 == 0) ? 1.0 : -1.0);
      H(i, j) = t;
      H(j, i) = t;
    }
  }
  return H;
}

/// Bound levels of `state` at rotational quantum number J, ascending in energy.
/// Only eigenpairs below the asymptote guard band are computed (LAPACK dsyevr).
inline RadialSolution solve_radial(const MoleculeDataset& ds, const std::string& state, int J,
                                   const RadialGrid& grid, std::size_t max_levels) {
  const auto& st = ds.state(state);
  if (J < 0) throw ConfigError("solve_radial: J must be non-negative");
  grid.validate();
  if (st.rigid_r_e) return detail::solve_rigid(ds, st, J, grid, max_levels);

  RadialSolution out;
  out.no_bound_levels = true;
  const double cutoff = st.asymptote_energy - kBoundGuard;
  if (max_levels == 0) return out;

  SymmetricMatrix H = dvr_hamiltonian(ds, state, J, grid);
  const auto n = static_cast<lapack_int>(grid.n);
  std::vector<double> values(grid.n), vectors(grid.n * grid.n);
  std::vector<lapack_int> support(2 * grid.n);
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'V', 'L', n, H.data.data(), n, -std::numeric_limits<double>::max(),
                     cutoff, 0, 0, 0.0, &found, values.data(), vectors.data(), n, support.data());
  if (info != 0) throw NumericalError("solve_radial: eigensolver failed (info " + std::to_string(info) + ")");

  const double norm = 1.0 / std::sqrt(grid.spacing());
  const auto count = std::min(static_cast<std::size_t>(found), max_levels);
  for (std::size_t k = 0; k < count; ++k) {
    if (!(values[k] < cutoff)) break;
    RovibLevel level;
    level.state = state;
    level.v = static_cast<int>(k);
    level.J = J;
    level.energy = values[k];
    level.grid = grid;
    level.wavefunction.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) level.wavefunction[i] = vectors[k * grid.n + i] * norm;
    detail::fix_sign(level.wavefunction);
    out.levels.push_back(std::move(level));
  }
  out.no_bound_levels = out.levels.empty();
  return out;
}

struct ConvergenceReport {
  RadialGrid base, refined;
  std::vector<double> shifts;  // |E_refined - E_base| per tracked level [cm^-1]
  std::size_t missing = 0;     // base levels absent on the refined grid
  bool converged = false;
  static constexpr double tolerance = 1.0e-3;  // cm^-1
};

/// Re-solves with n -> 2n and r_max -> 1.5 r_max and compares level energies.
inline ConvergenceReport convergence_check(const MoleculeDataset& ds, const std::string& state, int J,
                                           const RadialGrid& grid, std::size_t max_levels) {
  ConvergenceReport rep;
  rep.base = grid;
  rep.refined = RadialGrid{grid.r_min, 1.5 * grid.r_max, 2 * grid.n};
  const auto a = solve_radial(ds, state, J, rep.base, max_levels);
  const auto b = solve_radial(ds, state, J, rep.refined, max_levels);
  for (std::size_t k = 0; k < a.levels.size(); ++k) {
    if (k < b.levels.size())
      rep.shifts.push_back(std::abs(b.levels[k].energy - a.levels[k].energy));
    else
      ++rep.missing;
  }
  rep.converged = rep.missing == 0 &&
                  std::all_of(rep.shifts.begin(), rep.shifts.end(),
                              [](double s) { return s < ConvergenceReport::tolerance; });
  return rep;
}

/// B_v = <psi| hbar^2/(2 mu R^2) |psi> [cm^-1].
inline double rotational_constant(const RovibLevel& level, const MoleculeDataset& ds) {
  const double h = level.grid.spacing();
  double sum = 0.0;
  for (std::size_t i = 0; i < level.wavefunction.size(); ++i) {
    const double p = level.wavefunction[i];
    sum += p * p * centrifugal_factor(ds.reduced_mass, level.grid.node(i));
  }
  return sum * h;
}

/// Memoized solve_radial results for one dataset and grid. Safe for
/// concurrent use; concurrent misses on the same key solve once.
class LevelCache {
 public:
  LevelCache(const MoleculeDataset& ds, RadialGrid grid, std::size_t max_levels)
      : ds_(&ds), grid_(grid), max_levels_(max_levels) {
    grid_.validate();
  }

  const MoleculeDataset& dataset() const { return *ds_; }
  const RadialGrid& grid() const { return grid_; }
  std::size_t max_levels() const { return max_levels_; }

  const RadialSolution& get(const std::string& state, int J) {
    std::shared_ptr<Entry> entry;
    {
      std::lock_guard lock(mutex_);
      auto& slot = entries_[{state, J}];
      if (!slot) slot = std::make_shared<Entry>();
      entry = slot;
    }
    std::call_once(entry->once, [&] { entry->solution = solve_radial(*ds_, state, J, grid_, max_levels_); });
    return entry->solution;
  }

  /// Level (state, v, J) or nullptr if not bound.
  const RovibLevel* level(const std::string& state, int v, int J) {
    if (J < 0 || v < 0) return nullptr;
    const auto& sol = get(state, J);
    if (static_cast<std::size_t>(v) >= sol.levels.size()) return nullptr;
    return &sol.levels[static_cast<std::size_t>(v)];
  }

 private:
  struct Entry {
    std::once_flag once;
    RadialSolution solution;
  };
  const MoleculeDataset* ds_;
  RadialGrid grid_;
  std::size_t max_levels_;
  std::mutex mutex_;
  std::map<std::pair<std::string, int>, std::shared_ptr<Entry>> entries_;
};

}  // namespace polarmol
