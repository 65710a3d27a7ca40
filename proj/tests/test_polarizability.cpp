#include <gtest/gtest.h>

#include <random>
#include <set>

#include <polarmol/polarizability.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace polarmol;

namespace {

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

oracle::Pol oracle_pol(const Polarization& p) {
  if (p.name() == "sigma_x") return oracle::Pol::x;
  if (p.name() == "sigma_y") return oracle::Pol::y;
  return oracle::Pol::z;
}

}  // namespace

TEST(AlphaUnit, MatchesSiComposition) {
  // d^2 / (eps0 c h) / (h c 100) * 1e4 with SI values spelled out.
  const double h = 6.62607015e-34, c = 299792458.0, eps0 = 8.8541878128e-12, debye = 1e-21 / c;
  EXPECT_NEAR(kAlphaUnit, debye * debye / (eps0 * c * h) / (h * c * 100.0) * 1e4, 1e-9 * kAlphaUnit);
}

TEST(LineList, RotorHasOnlyNeighbouringJ) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 1.0);
  const auto list = fixtures::rotor_lines(*r, 2, 1, Polarization::sigma_x());
  ASSERT_EQ(list.lines.size(), 2u);
  std::set<int> js;
  for (const auto& l : list.lines) {
    js.insert(l.final_level.J);
    EXPECT_NEAR(std::abs(l.d_vib), 1.0, 1e-14);
    EXPECT_NEAR(l.delta_e, 0.02 * (l.final_level.J * (l.final_level.J + 1) - 6), 1e-14);
    EXPECT_EQ(l.gamma_mhz, 1.0);
    EXPECT_TRUE(l.gamma_fallback);
  }
  EXPECT_EQ(js, (std::set<int>{1, 3}));
}

TEST(LineList, TopRotorLevelOnlyCouplesDown) {
  auto r = fixtures::rotor(0.02, 1.0, 3, 1.0);
  const auto list = fixtures::rotor_lines(*r, 3, 0, Polarization::sigma_z());
  ASSERT_EQ(list.lines.size(), 1u);
  EXPECT_EQ(list.lines[0].final_level.J, 2);
}

TEST(LineList, MissingInitialLevel) {
  auto r = fixtures::rotor(0.02, 1.0, 3, 1.0);
  EXPECT_THROW(build_line_list(*r->cache, {"X", 1, 0, 0}, Polarization::sigma_z()), DataError);
  EXPECT_THROW(build_line_list(*r->cache, {"X", 0, 1, 2}, Polarization::sigma_z()), ConfigError);
  EXPECT_THROW(build_line_list(*r->cache, {"Y", 0, 0, 0}, Polarization::sigma_z()), DataError);
}

TEST(Alpha, RigidRotorMatchesExplicitSum) {
  auto r = fixtures::rotor(0.0167, 1.27, 6, 0.5);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 0.6);
  for (const auto& pol : {Polarization::sigma_x(), Polarization::sigma_y(), Polarization::sigma_z()})
    for (int J = 0; J <= 3; ++J)
      for (int M = -J; M <= J; ++M) {
        const auto list = fixtures::rotor_lines(*r, J, M, pol);
        for (int k = 0; k < 20; ++k) {
          const double nu = u(rng);
          const auto ours = alpha_at(list.lines, nu).value;
          const auto ref = oracle::rigid_rotor_alpha(J, M, oracle_pol(pol), r->b, r->d, 0.5, r->j_max, nu);
          EXPECT_LT(rel(ours, ref), 1e-10) << pol.name() << " J=" << J << " M=" << M << " nu=" << nu;
        }
      }
}

TEST(Alpha, StaticLimitOfGroundRotor) {
  // alpha(0) = 2 d^2 / (3 * 2B) in units of kAlphaUnit for gamma -> 0.
  auto r = fixtures::rotor(0.02, 1.0, 6, 0.0);
  const auto list = fixtures::rotor_lines(*r, 0, 0, Polarization::sigma_z());
  const auto a = alpha_at(list.lines, 0.0);
  EXPECT_NEAR(a.value.real(), kAlphaUnit * (1.0 / 3.0) / (2.0 * 0.02), 1e-12 * a.value.real());
  EXPECT_EQ(a.value.imag(), 0.0);
}

TEST(Alpha, ImaginaryPartPositiveForGroundLevel) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 5.0);
  const auto list = fixtures::rotor_lines(*r, 0, 0, Polarization::sigma_z());
  for (double nu = 0.001; nu < 1.0; nu += 0.01) EXPECT_GT(alpha_at(list.lines, nu).value.imag(), 0.0);
}

TEST(Alpha, UndampedPoleIsFlagged) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 0.0);
  const auto list = fixtures::rotor_lines(*r, 0, 0, Polarization::sigma_z());
  const double res = list.lines[0].delta_e;
  EXPECT_TRUE(alpha_at(list.lines, res).pole);
  EXPECT_FALSE(alpha_at(list.lines, res * 1.001).pole);
  const auto spec = scan_spectrum(list, {0.0, res, 2 * res});
  ASSERT_EQ(spec.poles.size(), 1u);
  EXPECT_EQ(spec.poles[0], res);
  EXPECT_EQ(spec.points.size(), 2u);
  ASSERT_EQ(spec.resonances.size(), 1u);
  EXPECT_TRUE(std::isinf(spec.resonances[0].peak));
}

TEST(Alpha, ContributionsSumToTotal) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 3.0);
  const auto list = fixtures::rotor_lines(*r, 1, 0, Polarization::sigma_z());
  const auto parts = alpha_contributions(list.lines, 0.07);
  std::complex<double> s = 0.0;
  for (const auto& [k, v] : parts) s += v;
  EXPECT_LT(rel(s, alpha_at(list.lines, 0.07).value), 1e-14);
}

TEST(FrequencyGrid, CountsAndValidation) {
  EXPECT_EQ(frequency_grid(0, 17000, 1).size(), 17001u);
  EXPECT_EQ(frequency_grid(0, 1, 0.1).size(), 11u);
  EXPECT_EQ(frequency_grid(2, 2, 1).size(), 1u);
  EXPECT_THROW(frequency_grid(0, 1, 0), ConfigError);
  EXPECT_THROW(frequency_grid(2, 1, 1), ConfigError);
  EXPECT_THROW(frequency_grid(-1, 1, 1), ConfigError);
}

TEST(Scan, IndependentOfThreadCount) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 2.0);
  const auto list = fixtures::rotor_lines(*r, 1, 1, Polarization::sigma_x());
  const auto grid = frequency_grid(0.0, 1.0, 0.0007);
  const auto one = scan_spectrum(list, grid, 1);
  for (unsigned t : {2u, 3u, 7u, 64u}) {
    const auto many = scan_spectrum(list, grid, t);
    ASSERT_EQ(many.points.size(), one.points.size());
    for (std::size_t k = 0; k < one.points.size(); ++k) {
      EXPECT_EQ(many.points[k].nu, one.points[k].nu);
      EXPECT_EQ(many.points[k].value, one.points[k].value);
    }
  }
  EXPECT_THROW(scan_spectrum(list, {0.2, 0.1}, 1), ConfigError);
}

TEST(Scan, ResonancesInsideRange) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 2.0);
  const auto list = fixtures::rotor_lines(*r, 1, 0, Polarization::sigma_z());
  const auto spec = scan_spectrum(list, frequency_grid(0.0, 0.1, 0.001));
  // J=1 -> 0 lies at negative energy, J=1 -> 2 at 4B = 0.08.
  ASSERT_EQ(spec.resonances.size(), 1u);
  EXPECT_NEAR(spec.resonances[0].nu, 0.08, 1e-14);
  EXPECT_EQ(spec.resonances[0].final_level.J, 2);
}

TEST(Alpha, LinearInLineList) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 3.0);
  const auto list = fixtures::rotor_lines(*r, 2, 1, Polarization::sigma_x());
  ASSERT_GE(list.lines.size(), 2u);
  const std::vector<LineStrength> a(list.lines.begin(), list.lines.begin() + 1), b(list.lines.begin() + 1, list.lines.end());
  for (double nu : {0.0, 0.05, 0.13, 0.4})
    EXPECT_LT(rel(alpha_at(a, nu).value + alpha_at(b, nu).value, alpha_at(list.lines, nu).value), 1e-12);
}

TEST(Alpha, HighFrequencyTailFallsAsInverseSquare) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 1.0);
  const auto list = fixtures::rotor_lines(*r, 0, 0, Polarization::sigma_z());
  double last = std::abs(alpha_at(list.lines, 1.0).value.real());
  for (double nu = 2.0; nu < 100.0; nu *= 2.0) {
    const double cur = std::abs(alpha_at(list.lines, nu).value.real());
    EXPECT_LT(cur, last);
    EXPECT_NEAR(cur / last, 0.25, 0.25 * 1e-2);
    last = cur;
  }
}

TEST(Alpha, RealPartChangesSignAcrossResonance) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 0.01);
  const auto list = fixtures::rotor_lines(*r, 0, 0, Polarization::sigma_z());
  EXPECT_GT(alpha_at(list.lines, 0.039).value.real(), 0.0);
  EXPECT_LT(alpha_at(list.lines, 0.041).value.real(), 0.0);
}

TEST(Alpha, PolarizationAndMIdentities) {
  auto r = fixtures::rotor(0.0167, 1.27, 6, 2.0);
  const auto x0 = fixtures::rotor_lines(*r, 0, 0, Polarization::sigma_x());
  const auto y0 = fixtures::rotor_lines(*r, 0, 0, Polarization::sigma_y());
  const auto z0 = fixtures::rotor_lines(*r, 0, 0, Polarization::sigma_z());
  const auto zp = fixtures::rotor_lines(*r, 1, 1, Polarization::sigma_z());
  const auto zm = fixtures::rotor_lines(*r, 1, -1, Polarization::sigma_z());
  const auto x1 = fixtures::rotor_lines(*r, 1, 0, Polarization::sigma_x());
  // Same (weight, delta E) multiset line by line.
  auto key = [](const LineList& l) {
    std::multiset<std::pair<double, double>> s;
    for (const auto& x : l.lines) s.insert({x.angular_weight, x.delta_e});
    return s;
  };
  auto close = [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return false;
    for (auto i = a.begin(), j = b.begin(); i != a.end(); ++i, ++j)
      if (std::abs(i->first - j->first) > 1e-14 || std::abs(i->second - j->second) > 1e-14) return false;
    return true;
  };
  EXPECT_TRUE(close(key(zp), key(x1)));
  EXPECT_TRUE(close(key(zp), key(zm)));
  for (double nu = 0.0; nu < 0.5; nu += 0.0037) {
    const auto a = alpha_at(z0.lines, nu).value;
    EXPECT_LT(rel(alpha_at(x0.lines, nu).value, a), 1e-12);
    EXPECT_LT(rel(alpha_at(y0.lines, nu).value, a), 1e-12);
    const auto p = alpha_at(zp.lines, nu).value;
    EXPECT_LT(rel(alpha_at(x1.lines, nu).value, p), 1e-12);
    EXPECT_LT(rel(alpha_at(zm.lines, nu).value, p), 1e-12);
  }
}

TEST(Scan, HiddenResonanceStillListed) {
  auto r = fixtures::rotor(0.02, 1.0, 6, 1.0);
  auto list = fixtures::rotor_lines(*r, 0, 0, Polarization::sigma_z());
  LineStrength hidden = list.lines[0];
  hidden.final_level = {"H", 7, 1};
  hidden.d_vib = 1e-7;
  hidden.delta_e = 0.3333;
  list.lines.push_back(hidden);
  const auto spec = scan_spectrum(list, frequency_grid(0.0, 1.0, 0.01));
  bool found = false;
  for (const auto& res : spec.resonances) found |= res.final_level.state == "H" && res.nu == 0.3333;
  EXPECT_TRUE(found);
}
