#pragma once

// Wigner 3-j symbols via the Racah single-sum formula.
// Arguments are passed as doubled integers (2j, 2m) so half-integers are exact.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace polarmol {

inline constexpr int kMaxTwoJ = 100;  // j <= 50

namespace detail {

inline const std::array<long double, 3 * kMaxTwoJ / 2 + 2>& factorial_table() {
  static const auto table = [] {
    std::array<long double, 3 * kMaxTwoJ / 2 + 2> t{};
    t[0] = 1.0L;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<long double>(i);
    return t;
  }();
  return table;
}

inline long double fact(int n) { return factorial_table()[static_cast<std::size_t>(n)]; }

}  // namespace detail

/// 3-j symbol (j1 j2 j3; m1 m2 m3) with all arguments doubled. Selection-rule
/// violations give 0; j above 50 throws ConfigError.
inline double wigner3j_doubled(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  if (tj1 > kMaxTwoJ || tj2 > kMaxTwoJ || tj3 > kMaxTwoJ)
    throw ConfigError("wigner3j: j above supported range (50)");
  if (tj1 < 0 || tj2 < 0 || tj3 < 0) return 0.0;
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0) return 0.0;
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;
  if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2)) return 0.0;

  // Undoubled integer combinations.
  const int a = (tj1 + tj2 - tj3) / 2;
  const int b = (tj1 - tj2 + tj3) / 2;
  const int c = (-tj1 + tj2 + tj3) / 2;
  const int s = (tj1 + tj2 + tj3) / 2 + 1;
  const int j1pm = (tj1 + tm1) / 2, j1mm = (tj1 - tm1) / 2;
  const int j2pm = (tj2 + tm2) / 2, j2mm = (tj2 - tm2) / 2;
  const int j3pm = (tj3 + tm3) / 2, j3mm = (tj3 - tm3) / 2;
  const int t1 = (tj3 - tj2 + tm1) / 2;  // j3 - j2 + m1
  const int t2 = (tj3 - tj1 - tm2) / 2;  // j3 - j1 - m2

  using detail::fact;
  const long double triangle = fact(a) * fact(b) * fact(c) / fact(s);
  const long double prefactor =
      std::sqrt(triangle * fact(j1pm) * fact(j1mm) * fact(j2pm) * fact(j2mm) * fact(j3pm) * fact(j3mm));

  const int kmin = std::max({0, -t1, -t2});
  const int kmax = std::min({a, j1mm, j2pm});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term = 1.0L / (fact(k) * fact(t1 + k) * fact(t2 + k) * fact(a - k) * fact(j1mm - k) *
                                     fact(j2pm - k));
    sum += (k % 2 == 0) ? term : -term;
  }
  const int phase_exp = (tj1 - tj2 - tm3) / 2;
  const long double phase = (((phase_exp % 2) + 2) % 2 == 0) ? 1.0L : -1.0L;
  return static_cast<double>(phase * prefactor * sum);
}

/// 3-j symbol with integer arguments.
inline double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  return wigner3j_doubled(2 * j1, 2 * j2, 2 * j3, 2 * m1, 2 * m2, 2 * m3);
}

}  // namespace polarmol
