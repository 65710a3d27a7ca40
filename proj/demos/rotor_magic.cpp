// Rigid-rotor polarizabilities of J=0 and J=1 and the microwave frequency at
// which the two light shifts coincide.
//
//   rotor_magic [B cm^-1] [d debye]

#include <polarmol/polarmol.hpp>

#include <cstdio>
#include <cstdlib>

using namespace polarmol;

int main(int argc, char** argv) {
  const double b = argc > 1 ? std::atof(argv[1]) : 0.0167;
  const double d = argc > 2 ? std::atof(argv[2]) : 1.27;
  const double mass = 52.5;

  const double re = rigid_rotor_bond_length(mass, b);
  const auto grid = RadialGrid::aligned(0.5 * re, 1.5 * re, 64, re);
  auto spec = ModelSpec::make_rigid_rotor(mass, b, d, 6);
  spec.default_gamma = 0.0;
  const auto ds = synthesize(spec, grid);
  LevelCache cache(ds, grid, 1);

  LineListOptions opts;
  opts.compute_gamma = false;
  const auto nu = frequency_grid(0.0, 20.0 * b, b / 100.0);
  const auto j0 = scan_spectrum(cache, {"X", 0, 0, 0}, Polarization::sigma_z(), nu, opts);
  const auto j1 = scan_spectrum(cache, {"X", 0, 1, 0}, Polarization::sigma_z(), nu, opts);

  std::printf("B = %.6g cm^-1, d = %.4g D\n", b, d);
  std::printf("static alpha/h (J=0): %.6g Hz/(W/cm^2)\n", alpha_at(*j0.lines, 0.0).value.real());
  for (const auto& root : find_magic(j0, j1))
    std::printf("magic: nu = %.9g cm^-1 (%.6g B), alpha/h = %.6g Hz/(W/cm^2)\n", root.nu, root.nu / b,
                root.alpha_a.real());
  return 0;
}
