#include <gtest/gtest.h>

#include <gsl/gsl_sf_coupling.h>

#include <polarmol/coupling.hpp>
#include <polarmol/models.hpp>
#include <polarmol/wigner.hpp>

#include "oracles.hpp"

using namespace polarmol;

namespace {

double gsl3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  return gsl_sf_coupling_3j(2 * j1, 2 * j2, 2 * j3, 2 * m1, 2 * m2, 2 * m3);
}

// Ground and displaced excited harmonic wells of equal curvature.
struct DisplacedPair {
  double mass = 20.0, k = 6643.0, re = 6.0, shift = 0.0;
  MoleculeDataset ds;
  RadialGrid grid{4.0, 8.5, 400};
};

DisplacedPair displaced_pair(double huang_rhys) {
  DisplacedPair p;
  const double mu = p.mass * oracle::kAmuMe;
  const double omega = oracle::harmonic_quantum(p.k, p.mass) / oracle::kHartreeCm1;
  p.shift = std::sqrt(2.0 * huang_rhys / (mu * omega));
  p.ds = synthesize(ModelSpec::make_harmonic(p.mass, p.k, p.re), p.grid);
  const auto r = p.grid.nodes();
  std::vector<double> v(r.size());
  const HarmonicParameters up{p.k, p.re + p.shift};
  for (std::size_t i = 0; i < r.size(); ++i) v[i] = 15000.0 + harmonic_potential(up, r[i]);
  ElectronicState e;
  e.label = "A";
  e.asymptote_energy = std::min(v.front(), v.back());
  p.ds.states.push_back(e);
  p.ds.potentials.emplace("A", PotentialCurve("A", r, v, e.asymptote_energy));
  p.ds.dipoles.emplace_back("X", "A", r, std::vector<double>(r.size(), 1.0));
  p.ds.validate();
  return p;
}

}  // namespace

TEST(Wigner, AgreesWithGslOverAllSmallArguments) {
  int checked = 0;
  for (int j1 = 0; j1 <= 6; ++j1)
    for (int j2 = 0; j2 <= 3; ++j2)
      for (int j3 = 0; j3 <= 7; ++j3)
        for (int m1 = -j1; m1 <= j1; ++m1)
          for (int m2 = -j2; m2 <= j2; ++m2)
            for (int m3 = -j3; m3 <= j3; ++m3) {
              EXPECT_NEAR(wigner3j(j1, j2, j3, m1, m2, m3), gsl3j(j1, j2, j3, m1, m2, m3), 1e-14);
              ++checked;
            }
  EXPECT_GT(checked, 10000);
}

TEST(Wigner, HalfIntegerAndLargeArguments) {
  EXPECT_NEAR(wigner3j_doubled(1, 1, 0, 1, -1, 0), gsl_sf_coupling_3j(1, 1, 0, 1, -1, 0), 1e-15);
  EXPECT_NEAR(wigner3j_doubled(3, 2, 1, 1, 0, -1), gsl_sf_coupling_3j(3, 2, 1, 1, 0, -1), 1e-15);
  for (int j : {20, 35, 49})
    EXPECT_NEAR(wigner3j(j, 1, j + 1, 3, 0, -3), gsl3j(j, 1, j + 1, 3, 0, -3), 1e-12);
  EXPECT_THROW(wigner3j(51, 1, 50, 0, 0, 0), ConfigError);
}

TEST(Wigner, SelectionRulesGiveZero) {
  EXPECT_EQ(wigner3j(1, 1, 3, 0, 0, 0), 0.0);   // triangle
  EXPECT_EQ(wigner3j(1, 1, 1, 1, 0, 0), 0.0);   // m sum
  EXPECT_EQ(wigner3j(1, 1, 1, 0, 0, 0), 0.0);   // odd J sum with all m = 0
  EXPECT_EQ(wigner3j(1, 1, 1, 2, -1, -1), 0.0); // |m| > j
}

TEST(AngularWeight, MatchesSphereQuadratureForOmegaZero) {
  for (int J = 0; J <= 4; ++J)
    for (int M = -J; M <= J; ++M)
      for (int Jp = std::max(0, J - 1); Jp <= J + 1; ++Jp) {
        const double wz = angular_weight(J, M, Jp, Polarization::sigma_z(), 0, 0);
        EXPECT_NEAR(wz, oracle::angular_matrix_element_sq(J, M, Jp, M, oracle::Pol::z), 1e-13);
        const double wx = angular_weight(J, M, Jp, Polarization::sigma_x(), 0, 0);
        const double ox = oracle::angular_matrix_element_sq(J, M, Jp, M + 1, oracle::Pol::x) +
                          oracle::angular_matrix_element_sq(J, M, Jp, M - 1, oracle::Pol::x);
        EXPECT_NEAR(wx, ox, 1e-13);
        const double wy = angular_weight(J, M, Jp, Polarization::sigma_y(), 0, 0);
        const double oy = oracle::angular_matrix_element_sq(J, M, Jp, M + 1, oracle::Pol::y) +
                          oracle::angular_matrix_element_sq(J, M, Jp, M - 1, oracle::Pol::y);
        EXPECT_NEAR(wy, oy, 1e-13);
      }
}

TEST(AngularWeight, SumRules) {
  // Summed over all final J', M' and the three q the weight is 1 for each
  // Omega pairing, for every initial (J, M).
  for (int omega : {0, 1})
    for (int omegap : {0, 1})
      for (int J = omega; J <= 6; ++J)
        for (int M = -J; M <= J; ++M) {
          double total = 0.0;
          for (int Jp = std::max(omegap, J - 1); Jp <= J + 1; ++Jp)
            for (int q = -1; q <= 1; ++q) total += angular_weight(J, M, Jp, M + q, q, omega, omegap);
          EXPECT_NEAR(total, 1.0, 1e-12) << omega << omegap << " J=" << J << " M=" << M;
        }
}

TEST(AngularWeight, KnownValues) {
  EXPECT_NEAR(angular_weight(0, 0, 1, Polarization::sigma_z(), 0, 0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(angular_weight(1, 0, 2, Polarization::sigma_z(), 0, 0), 4.0 / 15.0, 1e-15);
  EXPECT_NEAR(angular_weight(1, 0, 0, Polarization::sigma_z(), 0, 0), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(angular_weight(1, 0, 1, Polarization::sigma_z(), 0, 0), 0.0);  // parity
  EXPECT_EQ(angular_weight(0, 0, 0, Polarization::sigma_z(), 0, 1), 0.0);  // J' < Omega'
  EXPECT_GT(angular_weight(1, 0, 1, Polarization::sigma_x(), 0, 1), 0.0);  // Q branch to Omega = 1
}

TEST(Polarization, Parse) {
  EXPECT_EQ(Polarization::parse("pi").name(), "sigma_z");
  EXPECT_DOUBLE_EQ(Polarization::parse("sigma_plus").weight(1), 1.0);
  EXPECT_DOUBLE_EQ(Polarization::parse("sigma_x").weight(-1), 0.5);
  EXPECT_THROW(Polarization::parse("circular"), ConfigError);
  EXPECT_THROW(Polarization::spherical(2), ConfigError);
}

TEST(FranckCondon, DisplacedHarmonicMatchesPoisson) {
  for (double s : {0.5, 2.0}) {
    const auto p = displaced_pair(s);
    LevelCache cache(p.ds, p.grid, 20);
    const RovibLevel* g = cache.level("X", 0, 0);
    ASSERT_NE(g, nullptr);
    double sum = 0.0;
    for (int vp = 0; vp < 20; ++vp) {
      const RovibLevel* e = cache.level("A", vp, 0);
      ASSERT_NE(e, nullptr);
      const double f = franck_condon(*g, *e);
      sum += f;
      if (vp <= 8) {
        EXPECT_NEAR(f, oracle::poisson_fcf(vp, s), 1e-4) << "S=" << s << " v'=" << vp;
      }
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST(FranckCondon, SameStateIsKronecker) {
  const auto p = displaced_pair(1.0);
  LevelCache cache(p.ds, p.grid, 5);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      EXPECT_NEAR(franck_condon(*cache.level("X", a, 0), *cache.level("X", b, 0)), a == b ? 1.0 : 0.0, 1e-12);
}

TEST(VibronicDipole, LinearDipoleGivesLadderElement) {
  const auto p = displaced_pair(1.0);
  LevelCache cache(p.ds, p.grid, 6);
  const auto r = p.grid.nodes();
  std::vector<double> d(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) d[i] = 0.3 * (r[i] - p.re);
  for (int v = 0; v < 5; ++v) {
    const double m = vibronic_dipole(*cache.level("X", v, 0), *cache.level("X", v + 1, 0), d);
    EXPECT_NEAR(std::abs(m), 0.3 * oracle::ladder_matrix_element(v, p.k, p.mass), 1e-9);
  }
}

TEST(VibronicDipole, GridMismatchRejected) {
  const auto p = displaced_pair(1.0);
  LevelCache a(p.ds, p.grid, 2), b(p.ds, RadialGrid{4.0, 8.5, 401}, 2);
  EXPECT_THROW(overlap(*a.level("X", 0, 0), *b.level("X", 0, 0)), std::invalid_argument);
  EXPECT_THROW(vibronic_dipole(*a.level("X", 0, 0), *a.level("X", 1, 0), std::vector<double>(3, 1.0)),
               std::invalid_argument);
}

TEST(EinsteinA, MatchesAtomicUnitFormula) {
  for (double de : {1.0, 1e3, 12000.0})
    for (double d : {0.1, 1.0, 5.0}) EXPECT_NEAR(einstein_a(de, d), oracle::einstein_a_atomic_units(de, d),
                                                 1e-8 * oracle::einstein_a_atomic_units(de, d));
}

TEST(Linewidth, SumsDecayChannels) {
  const auto p = displaced_pair(1.0);
  LevelCache cache(p.ds, p.grid, 30);
  const RovibLevel* e = cache.level("A", 0, 1);
  const auto lw = natural_linewidth(*e, cache);
  EXPECT_FALSE(lw.fallback);
  // Unit dipole: A = sum_v FCF(v) A(dE_v, 1 D), branch weights sum to 1 for Omega 0-0.
  double expect = 0.0;
  for (int Jl : {0, 2}) {
    const double branch = emission_branch_weight(1, 0, Jl, 0);
    for (const auto& l : cache.get("X", Jl).levels)
      expect += branch * franck_condon(l, *e) * oracle::einstein_a_atomic_units(e->energy - l.energy, 1.0);
  }
  EXPECT_NEAR(lw.decay_rate, expect, 1e-6 * expect);
  EXPECT_NEAR(lw.gamma_mhz, lw.decay_rate / (2.0 * oracle::kPi) * 1e-6, 1e-12 * lw.gamma_mhz);
  EXPECT_NEAR(emission_branch_weight(1, 0, 0, 0) + emission_branch_weight(1, 0, 2, 0), 1.0, 1e-14);
}

TEST(Linewidth, FallsBackWithoutDipoles) {
  const auto p = displaced_pair(1.0);
  auto ds = p.ds;
  ds.dipoles.clear();
  ds.default_gamma = 4.5;
  LevelCache cache(ds, p.grid, 2);
  const auto lw = natural_linewidth(*cache.level("A", 0, 0), cache);
  EXPECT_TRUE(lw.fallback);
  EXPECT_EQ(lw.gamma_mhz, 4.5);
}

TEST(Wigner, DocumentedExamples) {
  EXPECT_NEAR(wigner3j(1, 1, 0, 0, 0, 0), -1.0 / std::sqrt(3.0), 1e-15);
  // sum_{m1,m2} (2 j3 + 1) (j1 j2 j3; m1 m2 m3)^2 = 1 for fixed m3.
  for (int m3 = -3; m3 <= 3; ++m3) {
    double sum = 0.0;
    for (int m1 = -1; m1 <= 1; ++m1)
      for (int m2 = -2; m2 <= 2; ++m2) {
        const double w = wigner3j(1, 2, 3, m1, m2, m3);
        sum += 7.0 * w * w;
      }
    EXPECT_NEAR(sum, 1.0, 1e-14) << m3;
  }
  EXPECT_NEAR(angular_weight(1, 1, 2, 1, 0, 0, 0), 0.2, 1e-15);
  EXPECT_NEAR(angular_weight(1, -1, 2, -1, 0, 0, 0), 0.2, 1e-15);
  EXPECT_EQ(angular_weight(1, 1, 0, 1, 0, 0, 0), 0.0);
  for (int q = -1; q <= 1; ++q) EXPECT_NEAR(angular_weight(0, 0, 1, q, q, 0, 0), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(angular_weight(0, 0, 0, 0, 0, 0, 1), 0.0);  // J = J' = 0 excluded for Omega 0 <-> 1
}

TEST(FranckCondon, RowSumsBoundedByOne) {
  const auto p = displaced_pair(3.0);
  LevelCache cache(p.ds, p.grid, 200);
  for (int v = 0; v < 5; ++v) {
    double sum = 0.0;
    for (const auto& f : cache.get("A", 0).levels) {
      const double x = franck_condon(*cache.level("X", v, 0), f);
      EXPECT_LE(x, 1.0 + 1e-8);
      sum += x;
    }
    EXPECT_LE(sum, 1.0 + 1e-8);
  }
}

TEST(EinsteinA, CubicInTransitionEnergy) {
  EXPECT_NEAR(einstein_a(2000.0, 1.3) / einstein_a(1000.0, 1.3), 8.0, 1e-12);
}
