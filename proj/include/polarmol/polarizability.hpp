#pragma once

// Complex dynamic polarizability of a rovibrational level:
//
//   alpha(nu) = 1/(eps0 c) sum_f (D_f - i h g_f/2) / ((D_f - i h g_f/2)^2 - (h nu)^2) |<f|d R.e|i>|^2
//
// with D_f = E_f - E_i. Values are reported as alpha/h in Hz/(W/cm^2), so
// that the light shift is -Re(alpha/h) * I for I in W/cm^2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "constants.hpp"
#include "coupling.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "rovib.hpp"

namespace polarmol {

struct LevelRef {
  std::string state;
  int v = 0;
  int J = 0;
  bool operator==(const LevelRef&) const = default;
  auto operator<=>(const LevelRef&) const = default;
};

struct InitialLevel {
  std::string state;
  int v = 0;
  int J = 0;
  int M = 0;
};

struct LineStrength {
  InitialLevel initial;
  LevelRef final_level;
  double d_vib = 0.0;           // debye
  double angular_weight = 0.0;  // summed over polarization components and M'
  double delta_e = 0.0;         // E_f - E_i [cm^-1]
  double gamma_mhz = 0.0;
  bool gamma_fallback = false;
};

/// Fraction of the closure sum sum_v' |<v'|d|i>|^2 / <i|d^2|i> captured by
/// the bound levels of one (dipole curve, J') branch.
struct CaptureReport {
  std::string state;
  int J = 0;
  double fraction = 1.0;
};

struct LineListOptions {
  bool compute_gamma = true;
  double dipole_floor = 1.0e-8;  // debye
};

struct LineList {
  InitialLevel initial;
  Polarization polarization;
  RovibLevel initial_level;
  std::vector<LineStrength> lines;
  std::vector<CaptureReport> capture;
};

/// Every dipole-allowed line from `initial` with nonzero angular weight and
/// |d_vib| above the floor. Final levels come from `cache`, restricted to
/// J' in {J-1, J, J+1}; the initial level itself is excluded.
inline LineList build_line_list(LevelCache& cache, const InitialLevel& initial, const Polarization& pol,
                                const LineListOptions& options = {}) {
  const auto& ds = cache.dataset();
  const auto& st = ds.state(initial.state);
  if (initial.J < st.omega || std::abs(initial.M) > initial.J || initial.v < 0)
    throw ConfigError("initial level has invalid quantum numbers");
  const RovibLevel* init = cache.level(initial.state, initial.v, initial.J);
  if (!init)
    throw DataError("initial level not found: " + initial.state + " v=" + std::to_string(initial.v) +
                    " J=" + std::to_string(initial.J));

  LineList out;
  out.initial = initial;
  out.polarization = pol;
  out.initial_level = *init;

  std::map<LevelRef, Linewidth> widths;
  auto width_of = [&](const RovibLevel& f) {
    LevelRef key{f.state, f.v, f.J};
    auto it = widths.find(key);
    if (it != widths.end()) return it->second;
    Linewidth lw = options.compute_gamma ? natural_linewidth(f, cache) : Linewidth{ds.default_gamma, 0.0, true};
    widths.emplace(key, lw);
    return lw;
  };

  for (const DipoleCurve* dip : ds.dipoles_touching(initial.state)) {
    const std::string& other = dip->bra() == initial.state ? dip->ket() : dip->bra();
    const auto& ost = ds.state(other);
    const auto d_grid = sample_dipole(*dip, cache.grid());
    double closure = 0.0;
    for (std::size_t i = 0; i < d_grid.size(); ++i)
      closure += init->wavefunction[i] * init->wavefunction[i] * d_grid[i] * d_grid[i];
    closure *= cache.grid().spacing();

    for (int Jp = initial.J - 1; Jp <= initial.J + 1; ++Jp) {
      if (Jp < ost.omega || (ost.rigid_j_max && Jp > *ost.rigid_j_max)) continue;
      const double w = angular_weight(initial.J, initial.M, Jp, pol, st.omega, ost.omega);
      if (!(w > 0.0)) continue;
      double captured = 0.0;
      for (const auto& f : cache.get(other, Jp).levels) {
        if (other == initial.state && f.v == initial.v && Jp == initial.J) continue;
        const double d = vibronic_dipole(*init, f, d_grid);
        captured += d * d;
        if (!(std::abs(d) > options.dipole_floor)) continue;
        const Linewidth lw = width_of(f);
        out.lines.push_back(LineStrength{initial, {f.state, f.v, f.J}, d, w, f.energy - init->energy,
                                         lw.gamma_mhz, lw.fallback});
      }
      out.capture.push_back({other, Jp, closure > 0.0 ? captured / closure : 1.0});
    }
  }
  return out;
}

/// alpha/h in Hz/(W/cm^2) per (debye^2 / cm^-1).
inline constexpr double kAlphaUnit = [] {
  using namespace constants;
  return debye * debye / (vacuum_permittivity * speed_of_light * planck * wavenumber_to_joule) * 1.0e4;
}();

struct AlphaValue {
  double nu = 0.0;                  // cm^-1
  std::complex<double> value;       // alpha/h [Hz/(W/cm^2)]
  bool pole = false;                // exact hit on an undamped resonance
};

/// Contribution of one line at photon energy nu [cm^-1]; pole set on a zero denominator.
inline std::complex<double> line_alpha(const LineStrength& line, double nu, bool& pole) {
  const std::complex<double> shifted(line.delta_e, -0.5 * units::mhz_to_cm1(line.gamma_mhz));
  const std::complex<double> denom = shifted * shifted - nu * nu;
  if (denom == 0.0) {
    pole = true;
    return {};
  }
  return kAlphaUnit * line.d_vib * line.d_vib * line.angular_weight * shifted / denom;
}

inline AlphaValue alpha_at(const std::vector<LineStrength>& lines, double nu) {
  AlphaValue out;
  out.nu = nu;
  for (const auto& line : lines) out.value += line_alpha(line, nu, out.pole);
  if (out.pole) out.value = {std::numeric_limits<double>::infinity(), 0.0};
  return out;
}

/// Per-final-state breakdown of alpha_at.
inline std::map<std::string, std::complex<double>> alpha_contributions(const std::vector<LineStrength>& lines,
                                                                        double nu) {
  std::map<std::string, std::complex<double>> out;
  bool pole = false;
  for (const auto& line : lines) out[line.final_level.state] += line_alpha(line, nu, pole);
  return out;
}

struct Resonance {
  double nu = 0.0;  // cm^-1
  LevelRef final_level;
  double peak = 0.0;  // single-line |alpha/h| at nu, Hz/(W/cm^2); inf when undamped
};

struct PolarizabilitySpectrum {
  InitialLevel initial;
  Polarization polarization;
  std::vector<AlphaValue> points;  // finite points, ordered by nu
  std::vector<double> poles;       // grid frequencies skipped as exact poles
  std::vector<Resonance> resonances;
  std::shared_ptr<const std::vector<LineStrength>> lines;
};

/// lo, lo+step, ... up to hi (inclusive within 1e-9 of a step).
inline std::vector<double> frequency_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !(lo >= 0.0) || !std::isfinite(hi))
    throw ConfigError("frequency grid: require 0 <= lo <= hi and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1.0e-9)) + 1;
  std::vector<double> nu(count);
  for (std::size_t k = 0; k < count; ++k) nu[k] = lo + step * static_cast<double>(k);
  return nu;
}

/// Lines whose transition energy lies in [lo, hi], ordered by frequency.
inline std::vector<Resonance> list_resonances(const std::vector<LineStrength>& lines, double lo, double hi) {
  std::vector<Resonance> out;
  for (const auto& line : lines) {
    if (line.delta_e < lo || line.delta_e > hi) continue;
    bool pole = false;
    const double peak = std::abs(line_alpha(line, line.delta_e, pole));
    out.push_back({line.delta_e, line.final_level, pole ? std::numeric_limits<double>::infinity() : peak});
  }
  std::stable_sort(out.begin(), out.end(), [](const Resonance& a, const Resonance& b) { return a.nu < b.nu; });
  return out;
}

/// Evaluates alpha on `nu_grid`. Points are split into contiguous blocks
/// across `threads` workers; the result does not depend on the thread count.
inline PolarizabilitySpectrum scan_spectrum(const LineList& list, const std::vector<double>& nu_grid,
                                            unsigned threads = 1) {
  for (std::size_t k = 0; k < nu_grid.size(); ++k) {
    if (!(nu_grid[k] >= 0.0)) throw ConfigError("scan: frequencies must be non-negative");
    if (k > 0 && !(nu_grid[k] > nu_grid[k - 1])) throw ConfigError("scan: frequency grid must be increasing");
  }
  PolarizabilitySpectrum spec;
  spec.initial = list.initial;
  spec.polarization = list.polarization;
  spec.lines = std::make_shared<const std::vector<LineStrength>>(list.lines);

  std::vector<AlphaValue> values(nu_grid.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(nu_grid.size(), 1))));
  if (threads == 1) {
    for (std::size_t k = 0; k < nu_grid.size(); ++k) values[k] = alpha_at(list.lines, nu_grid[k]);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (nu_grid.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = t * chunk, hi = std::min(nu_grid.size(), lo + chunk);
      workers.emplace_back([&, lo, hi] {
        for (std::size_t k = lo; k < hi; ++k) values[k] = alpha_at(list.lines, nu_grid[k]);
      });
    }
    for (auto& w : workers) w.join();
  }
  for (auto& v : values) {
    if (v.pole) spec.poles.push_back(v.nu);
    else spec.points.push_back(v);
  }
  if (!nu_grid.empty()) spec.resonances = list_resonances(list.lines, nu_grid.front(), nu_grid.back());
  return spec;
}

inline PolarizabilitySpectrum scan_spectrum(LevelCache& cache, const InitialLevel& initial, const Polarization& pol,
                                            const std::vector<double>& nu_grid, const LineListOptions& options = {},
                                            unsigned threads = 1) {
  return scan_spectrum(build_line_list(cache, initial, pol, options), nu_grid, threads);
}

}  // namespace polarmol
