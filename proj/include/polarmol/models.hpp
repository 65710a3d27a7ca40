#pragma once

// Analytic model molecules sampled onto a radial grid.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "constants.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "grid.hpp"

namespace polarmol {

enum class ModelKind { morse, harmonic, rigid_rotor };

struct MorseParameters {
  double well_depth = 0.0;  // D_e [cm^-1]
  double range = 0.0;       // a [1/bohr]
  double r_e = 0.0;         // [bohr]
};

/// V(R) = k (R - r_e)^2 / 2
struct HarmonicParameters {
  double force_constant = 0.0;  // k [cm^-1/bohr^2]
  double r_e = 0.0;             // [bohr]
};

struct RigidRotorParameters {
  double rotational_constant = 0.0;  // B [cm^-1]
  double dipole = 0.0;               // d [debye]
  int j_max = 2;
};

struct ModelSpec {
  ModelKind kind = ModelKind::morse;
  double reduced_mass = 0.0;  // amu
  MorseParameters morse;
  HarmonicParameters harmonic;
  RigidRotorParameters rigid;
  /// Optional constant permanent dipole for morse/harmonic models [debye].
  std::optional<double> permanent_dipole;
  double default_gamma = 6.0;  // MHz

  static ModelSpec make_morse(double mass, double depth, double range, double r_e) {
    ModelSpec m;
    m.kind = ModelKind::morse;
    m.reduced_mass = mass;
    m.morse = {depth, range, r_e};
    return m;
  }
  static ModelSpec make_harmonic(double mass, double k, double r_e) {
    ModelSpec m;
    m.kind = ModelKind::harmonic;
    m.reduced_mass = mass;
    m.harmonic = {k, r_e};
    return m;
  }
  static ModelSpec make_rigid_rotor(double mass, double b, double d, int j_max) {
    ModelSpec m;
    m.kind = ModelKind::rigid_rotor;
    m.reduced_mass = mass;
    m.rigid = {b, d, j_max};
    return m;
  }

  void validate() const {
    auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
    if (!positive(reduced_mass)) throw ConfigError("model: reduced mass must be positive");
    switch (kind) {
      case ModelKind::morse:
        if (!positive(morse.well_depth) || !positive(morse.range) || !positive(morse.r_e))
          throw ConfigError("morse model: D_e, a and r_e must be positive");
        break;
      case ModelKind::harmonic:
        if (!positive(harmonic.force_constant) || !positive(harmonic.r_e))
          throw ConfigError("harmonic model: k and r_e must be positive");
        break;
      case ModelKind::rigid_rotor:
        if (!positive(rigid.rotational_constant) || !positive(rigid.dipole))
          throw ConfigError("rigid rotor model: B and d must be positive");
        if (rigid.j_max < 2) throw ConfigError("rigid rotor model: J_max must be at least 2");
        break;
    }
  }
};

inline double morse_potential(const MorseParameters& p, double R) {
  const double x = 1.0 - std::exp(-p.range * (R - p.r_e));
  return p.well_depth * x * x - p.well_depth;
}

inline double harmonic_potential(const HarmonicParameters& p, double R) {
  const double x = R - p.r_e;
  return 0.5 * p.force_constant * x * x;
}

/// Bond length [bohr] of a rigid rotor with rotational constant B [cm^-1].
inline double rigid_rotor_bond_length(double reduced_mass_amu, double b_cm1) {
  const double mu = units::amu_to_me(reduced_mass_amu);
  return std::sqrt(1.0 / (2.0 * mu * units::cm1_to_hartree(b_cm1)));
}

/// Ground state labelled "X" (omega 0) sampled on the grid nodes.
inline MoleculeDataset synthesize(const ModelSpec& model, const RadialGrid& grid) {
  model.validate();
  grid.validate();
  const std::vector<double> r = grid.nodes();
  std::vector<double> v(r.size());
  ElectronicState x;
  x.label = "X";
  x.parity_tag = "+";

  MoleculeDataset ds;
  ds.reduced_mass = model.reduced_mass;
  ds.ground_label = "X";
  ds.default_gamma = model.default_gamma;
  std::optional<double> dipole = model.permanent_dipole;

  switch (model.kind) {
    case ModelKind::morse:
      ds.name = "morse-model";
      for (std::size_t i = 0; i < r.size(); ++i) v[i] = morse_potential(model.morse, r[i]);
      x.asymptote_energy = 0.0;
      break;
    case ModelKind::harmonic:
      ds.name = "harmonic-model";
      for (std::size_t i = 0; i < r.size(); ++i) v[i] = harmonic_potential(model.harmonic, r[i]);
      x.asymptote_energy = std::min(v.front(), v.back());
      break;
    case ModelKind::rigid_rotor:
      ds.name = "rigid-rotor-model";
      std::fill(v.begin(), v.end(), 0.0);
      x.rigid_r_e = rigid_rotor_bond_length(model.reduced_mass, model.rigid.rotational_constant);
      x.asymptote_energy = 0.0;
      x.rigid_j_max = model.rigid.j_max;
      dipole = model.rigid.dipole;
      break;
  }

  ds.potentials.emplace("X", PotentialCurve("X", r, v, x.asymptote_energy));
  ds.states.push_back(x);
  if (dipole) ds.dipoles.emplace_back("X", "X", r, std::vector<double>(r.size(), *dipole));
  ds.validate();
  return ds;
}

}  // namespace polarmol
