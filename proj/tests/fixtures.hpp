#pragma once

// Small model datasets shared by the tests.

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include <polarmol/models.hpp>
#include <polarmol/polarizability.hpp>

namespace fixtures {

struct Rotor {
  double mass = 50.0, b = 0.02, d = 1.27;
  int j_max = 6;
  polarmol::MoleculeDataset ds;
  polarmol::RadialGrid grid;
  std::unique_ptr<polarmol::LevelCache> cache;
};

/// Rigid rotor on a grid aligned with its bond length, linewidth `gamma` for
/// every line (natural widths disabled via LineListOptions below).
inline std::unique_ptr<Rotor> rotor(double b, double d, int j_max, double gamma_mhz, double mass = 50.0) {
  auto r = std::make_unique<Rotor>();
  r->mass = mass;
  r->b = b;
  r->d = d;
  r->j_max = j_max;
  const double re = polarmol::rigid_rotor_bond_length(mass, b);
  r->grid = polarmol::RadialGrid::aligned(0.5 * re, 1.5 * re, 64, re);
  auto spec = polarmol::ModelSpec::make_rigid_rotor(mass, b, d, j_max);
  spec.default_gamma = gamma_mhz;
  r->ds = polarmol::synthesize(spec, r->grid);
  r->cache = std::make_unique<polarmol::LevelCache>(r->ds, r->grid, 4);
  return r;
}

inline polarmol::LineListOptions fixed_width() {
  polarmol::LineListOptions o;
  o.compute_gamma = false;
  return o;
}

inline polarmol::LineList rotor_lines(Rotor& r, int J, int M, const polarmol::Polarization& pol) {
  return polarmol::build_line_list(*r.cache, {"X", 0, J, M}, pol, fixed_width());
}

}  // namespace fixtures
