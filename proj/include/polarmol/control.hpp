#pragma once

// Field-control quantities derived from polarizabilities: microwave dressing,
// lattice depth and scattering, dipole-dipole interaction times, magic
// frequencies and low-loss frequency windows.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "polarizability.hpp"

namespace polarmol {

// ---------------------------------------------------------------------------
// Microwave dressing of J=0 by the J=0 -> 1 transition

struct MicrowavePlan {
  double nu = 0.0;              // drive frequency [cm^-1]
  double intensity = 0.0;       // W/cm^2
  double detuning = 0.0;        // h nu - (E_{J=1} - E_{J=0}) [cm^-1]
  double rabi = 0.0;            // hbar Omega_R [cm^-1]
  double d_induced = 0.0;       // debye
  double d_permanent_ref = 0.0; // debye
};

/// Peak field [V/m] of a running wave of intensity I [W/cm^2], I = eps0 c E^2 / 2.
inline double field_amplitude(double intensity_w_cm2) {
  using namespace constants;
  return std::sqrt(2.0 * intensity_w_cm2 * 1.0e4 / (vacuum_permittivity * speed_of_light));
}

/// hbar Omega_R = d E sqrt(w) in cm^-1.
inline double rabi_energy(double d_perm, double intensity, double angular_weight) {
  return units::joule_to_cm1(units::debye_to_si(d_perm) * field_amplitude(intensity) * std::sqrt(angular_weight));
}

/// Two-level dressed-state induced dipole (d/2) Omega_R / sqrt(Omega_R^2 + delta^2).
inline MicrowavePlan dress(double d_perm, double delta_e, double nu, double intensity,
                           double angular_weight = 1.0 / 3.0) {
  if (!(d_perm > 0.0)) throw ConfigError("induced dipole: permanent dipole must be positive");
  if (!(intensity >= 0.0)) throw ConfigError("induced dipole: intensity must be non-negative");
  MicrowavePlan p;
  p.nu = nu;
  p.intensity = intensity;
  p.detuning = nu - delta_e;
  p.rabi = rabi_energy(d_perm, intensity, angular_weight);
  p.d_permanent_ref = d_perm;
  p.d_induced = p.rabi == 0.0 ? 0.0 : 0.5 * d_perm * p.rabi / std::hypot(p.rabi, p.detuning);
  return p;
}

inline double induced_dipole(double d_perm, double delta_e, double nu, double intensity,
                             double angular_weight = 1.0 / 3.0) {
  return dress(d_perm, delta_e, nu, intensity, angular_weight).d_induced;
}

/// Weak-field limit (d/2) Omega_R / |delta|; diverges on resonance.
inline double induced_dipole_perturbative(double d_perm, double delta_e, double nu, double intensity,
                                          double angular_weight = 1.0 / 3.0) {
  const double rabi = rabi_energy(d_perm, intensity, angular_weight);
  const double detuning = std::abs(nu - delta_e);
  if (detuning == 0.0) return rabi == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return 0.5 * d_perm * rabi / detuning;
}

// ---------------------------------------------------------------------------
// Dipole-dipole interaction between neighbouring lattice sites

struct InteractionEstimate {
  double v_dd_over_h = 0.0;       // Hz
  std::optional<double> delta_t;  // s; empty when the interaction vanishes
  bool unbounded() const { return !delta_t.has_value(); }
};

/// V_dd = d^2 / (4 pi eps0 R_L^3), delta_t = h / V_dd.
inline InteractionEstimate dd_interaction(double d_induced, double spacing_nm) {
  using namespace constants;
  if (!(spacing_nm > 0.0)) throw ConfigError("dd_interaction: lattice spacing must be positive");
  const double d = units::debye_to_si(d_induced);
  const double r = spacing_nm * 1.0e-9;
  InteractionEstimate out;
  out.v_dd_over_h = d * d / (4.0 * pi * vacuum_permittivity * r * r * r) / planck;
  if (out.v_dd_over_h > 0.0) out.delta_t = 1.0 / out.v_dd_over_h;
  return out;
}

// ---------------------------------------------------------------------------
// Optical lattice

struct LatticePlan {
  double wavelength_nm = 0.0;
  double intensity = 0.0;         // W/cm^2
  double v0_over_h = 0.0;         // Hz, -Re(alpha/h) I
  double decoherence_rate = 0.0;  // 1/s, 2 Im(alpha) I / hbar
  double spacing_nm = 0.0;        // R_L = wavelength / 2
  double coherent_ratio = 0.0;    // |Re alpha| / |Im alpha|
};

inline double coherent_ratio(std::complex<double> alpha) {
  const double re = std::abs(alpha.real()), im = std::abs(alpha.imag());
  if (im == 0.0) return re == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return re / im;
}

/// `alpha` is alpha/h in Hz/(W/cm^2).
inline LatticePlan lattice_plan(std::complex<double> alpha, double intensity, double wavelength_nm) {
  if (!(intensity >= 0.0)) throw ConfigError("lattice_plan: intensity must be non-negative");
  if (!(wavelength_nm > 0.0)) throw ConfigError("lattice_plan: wavelength must be positive");
  LatticePlan p;
  p.wavelength_nm = wavelength_nm;
  p.intensity = intensity;
  p.v0_over_h = -alpha.real() * intensity;
  p.decoherence_rate = 4.0 * constants::pi * alpha.imag() * intensity;
  p.spacing_nm = wavelength_nm / 2.0;
  p.coherent_ratio = coherent_ratio(alpha);
  return p;
}

inline LatticePlan lattice_plan(const AlphaValue& alpha, double intensity, double wavelength_nm) {
  return lattice_plan(alpha.value, intensity, wavelength_nm);
}

// ---------------------------------------------------------------------------
// Magic frequencies

struct MagicRoot {
  double nu = 0.0;  // cm^-1
  std::complex<double> alpha_a, alpha_b;
};

namespace detail {

inline bool resonance_in(const PolarizabilitySpectrum& s, double lo, double hi) {
  for (const auto& r : s.resonances)
    if (r.nu >= lo && r.nu <= hi) return true;
  for (double p : s.poles)
    if (p >= lo && p <= hi) return true;
  return false;
}

}  // namespace detail

/// Roots of Re alpha_a - Re alpha_b: sign changes on the shared grid, refined
/// by bisection to machine precision. Brackets holding a resonance of either
/// spectrum are skipped.
inline std::vector<MagicRoot> find_magic(const PolarizabilitySpectrum& a, const PolarizabilitySpectrum& b) {
  if (!a.lines || !b.lines) throw ConfigError("find_magic: spectra carry no line lists");
  if (a.points.size() != b.points.size()) throw ConfigError("find_magic: spectra must share the frequency grid");
  for (std::size_t k = 0; k < a.points.size(); ++k)
    if (a.points[k].nu != b.points[k].nu) throw ConfigError("find_magic: spectra must share the frequency grid");

  bool distinct = false;
  std::vector<double> g(a.points.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double ra = a.points[k].value.real(), rb = b.points[k].value.real();
    g[k] = ra - rb;
    if (std::abs(g[k]) > 1.0e-12 * std::max(std::abs(ra), std::abs(rb))) distinct = true;
  }
  if (!distinct) throw ConfigError("find_magic: degenerate input, spectra are identical");

  auto diff = [&](double nu) { return alpha_at(*a.lines, nu).value.real() - alpha_at(*b.lines, nu).value.real(); };
  auto make_root = [&](double nu) {
    return MagicRoot{nu, alpha_at(*a.lines, nu).value, alpha_at(*b.lines, nu).value};
  };

  std::vector<MagicRoot> roots;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double nu = a.points[k].nu;
    if (g[k] == 0.0) {
      if (!detail::resonance_in(a, nu, nu) && !detail::resonance_in(b, nu, nu)) roots.push_back(make_root(nu));
      continue;
    }
    if (k + 1 >= g.size() || g[k + 1] == 0.0 || (g[k] > 0.0) == (g[k + 1] > 0.0)) continue;
    double lo = nu, hi = a.points[k + 1].nu;
    if (detail::resonance_in(a, lo, hi) || detail::resonance_in(b, lo, hi)) continue;
    const bool lo_positive = g[k] > 0.0;
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double gm = diff(mid);
      root = mid;
      if (gm == 0.0) break;
      if ((gm > 0.0) == lo_positive) lo = mid;
      else hi = mid;
    }
    roots.push_back(make_root(root));
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Frequency windows

struct FrequencyWindow {
  double nu_lo = 0.0, nu_hi = 0.0;  // cm^-1
  double wavelength_lo_nm = 0.0;    // vacuum wavelength of nu_hi
  double wavelength_hi_nm = 0.0;    // vacuum wavelength of nu_lo (inf at nu_lo = 0)
  double max_log_slope = 0.0;       // max |d ln|alpha| / d nu| [1/cm^-1]
  double min_ratio = 0.0;           // min |Re alpha| / |Im alpha|
  std::vector<double> resonances_excluded;  // nearest listed resonances on either side
};

/// |ln|alpha_{k+1}| - ln|alpha_k|| / (nu_{k+1} - nu_k).
inline double log_slope(const AlphaValue& x, const AlphaValue& y) {
  const double ax = std::abs(x.value), ay = std::abs(y.value);
  if (ax == ay) return 0.0;
  if (ax == 0.0 || ay == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(std::log(ay) - std::log(ax)) / (y.nu - x.nu);
}

/// Maximal runs of grid points in which every adjacent pair has a log-slope
/// at most `flatness_cap`, every point has |Re|/|Im| >= `ratio_floor`, and no
/// listed resonance or pole lies in between. Runs narrower than `min_width`
/// are dropped.
inline std::vector<FrequencyWindow> find_windows(const PolarizabilitySpectrum& spectrum, double min_width,
                                                 double flatness_cap, double ratio_floor) {
  const auto& pts = spectrum.points;
  std::vector<FrequencyWindow> out;
  if (pts.size() < 3) return out;

  auto segment_ok = [&](std::size_t k) {
    return coherent_ratio(pts[k].value) >= ratio_floor && coherent_ratio(pts[k + 1].value) >= ratio_floor &&
           log_slope(pts[k], pts[k + 1]) <= flatness_cap &&
           !detail::resonance_in(spectrum, pts[k].nu, pts[k + 1].nu);
  };

  auto emit = [&](std::size_t first, std::size_t last) {
    FrequencyWindow w;
    w.nu_lo = pts[first].nu;
    w.nu_hi = pts[last].nu;
    if (!(w.nu_hi - w.nu_lo >= min_width) || !(w.nu_hi > w.nu_lo)) return;
    w.wavelength_lo_nm = units::cm1_to_nm(w.nu_hi);
    w.wavelength_hi_nm = w.nu_lo > 0.0 ? units::cm1_to_nm(w.nu_lo) : std::numeric_limits<double>::infinity();
    w.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t k = first; k <= last; ++k) {
      w.min_ratio = std::min(w.min_ratio, coherent_ratio(pts[k].value));
      if (k < last) w.max_log_slope = std::max(w.max_log_slope, log_slope(pts[k], pts[k + 1]));
    }
    std::optional<double> below, above;
    for (const auto& r : spectrum.resonances) {
      if (r.nu <= w.nu_lo) below = r.nu;
      if (r.nu >= w.nu_hi && !above) above = r.nu;
    }
    if (below) w.resonances_excluded.push_back(*below);
    if (above) w.resonances_excluded.push_back(*above);
    out.push_back(std::move(w));
  };

  std::optional<std::size_t> start;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (segment_ok(k)) {
      if (!start) start = k;
    } else if (start) {
      emit(*start, k);
      start.reset();
    }
  }
  if (start) emit(*start, pts.size() - 1);
  return out;
}

}  // namespace polarmol
