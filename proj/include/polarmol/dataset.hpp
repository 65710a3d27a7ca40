#pragma once

// Molecular input data: electronic states, potential curves and dipole
// functions in canonical units (bohr, cm^-1, debye, amu).

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "spline.hpp"

namespace polarmol {

struct ElectronicState {
  std::string label;
  int omega = 0;  // 0 or 1
  std::optional<std::string> parity_tag;
  double asymptote_energy = 0.0;  // cm^-1
  /// Set for rigid-rotor states: the fixed internuclear distance [bohr].
  std::optional<double> rigid_r_e;
  /// Highest rotational level kept for a rigid-rotor state.
  std::optional<int> rigid_j_max;
};

enum class ShortRangeRule { inverse_power_12 };
enum class LongRangeRule { exponential };

/// Tabulated potential with natural cubic spline inside the table,
/// V = A + B/R^12 below the first node and an exponential approach to the
/// state's asymptote beyond the last node.
class PotentialCurve {
 public:
  PotentialCurve() = default;

  PotentialCurve(std::string state, std::vector<double> r, std::vector<double> v,
                 double asymptote)
      : state_(std::move(state)), r_(std::move(r)), v_(std::move(v)), asymptote_(asymptote) {
    if (r_.size() != v_.size()) throw DataError("potential " + state_ + ": column length mismatch");
    if (r_.size() < 2) throw DataError("potential " + state_ + ": need at least 2 points");
    for (std::size_t i = 0; i < r_.size(); ++i) {
      if (!std::isfinite(r_[i]) || !std::isfinite(v_[i]))
        throw DataError("potential " + state_ + ": non-finite sample");
      if (!(r_[i] > 0.0)) throw DataError("potential " + state_ + ": R must be positive");
      if (i > 0 && !(r_[i] > r_[i - 1]))
        throw DataError("potential " + state_ + ": R not strictly increasing");
    }
    spline_ = NaturalCubicSpline(r_, v_);
    fit_short_range();
    fit_long_range();
  }

  const std::string& state() const { return state_; }
  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& v() const { return v_; }
  double asymptote() const { return asymptote_; }
  ShortRangeRule short_range_rule() const { return ShortRangeRule::inverse_power_12; }
  LongRangeRule long_range_rule() const { return LongRangeRule::exponential; }
  double long_range_decay() const { return decay_; }

  /// Potential at R > 0 [cm^-1].
  double operator()(double R) const {
    if (R < r_.front()) return sr_a_ + sr_b_ / std::pow(R, 12);
    if (R > r_.back()) return asymptote_ + (v_.back() - asymptote_) * std::exp(-decay_ * (R - r_.back()));
    return spline_(R);
  }

  /// Distance beyond which |V - asymptote| <= fraction * scale.
  double settle_radius(double fraction, double scale) const {
    const double gap = std::abs(v_.back() - asymptote_);
    if (gap <= fraction * scale) return r_.back();
    return r_.back() + std::log(gap / (fraction * scale)) / decay_;
  }

  /// True when some interior sample lies strictly below both table ends.
  bool has_interior_minimum() const {
    const auto it = std::min_element(v_.begin(), v_.end());
    return it != v_.begin() && it != v_.end() - 1 && *it < v_.front() && *it < v_.back();
  }

  double minimum_sample() const { return *std::min_element(v_.begin(), v_.end()); }

 private:
  void fit_short_range() {
    const double r1 = r_[0], r2 = r_[1];
    const double p1 = std::pow(r1, -12), p2 = std::pow(r2, -12);
    double b = (v_[0] - v_[1]) / (p1 - p2);
    if (!(b > 0.0)) b = std::pow(r1, 12) * std::max(1.0, std::abs(v_[0]));
    sr_b_ = b;
    sr_a_ = v_[0] - b * p1;
  }

  void fit_long_range() {
    const std::size_t n = r_.size();
    const double g1 = v_[n - 2] - asymptote_;
    const double g2 = v_[n - 1] - asymptote_;
    decay_ = 1.0;
    if (g1 != 0.0 && g2 != 0.0 && (g1 > 0.0) == (g2 > 0.0) && std::abs(g1) > std::abs(g2))
      decay_ = std::log(g1 / g2) / (r_[n - 1] - r_[n - 2]);
  }

  std::string state_;
  std::vector<double> r_, v_;
  double asymptote_ = 0.0;
  NaturalCubicSpline spline_;
  double sr_a_ = 0.0, sr_b_ = 0.0;
  double decay_ = 1.0;
};

enum class DipoleKind { permanent, transition };

/// R-dependent electronic dipole moment between two states [debye].
/// Held constant beyond the table ends.
class DipoleCurve {
 public:
  DipoleCurve() = default;

  DipoleCurve(std::string bra, std::string ket, std::vector<double> r, std::vector<double> d)
      : bra_(std::move(bra)), ket_(std::move(ket)), r_(std::move(r)), d_(std::move(d)) {
    const std::string name = "dipole " + bra_ + "/" + ket_;
    if (r_.size() != d_.size()) throw DataError(name + ": column length mismatch");
    if (r_.empty()) throw DataError(name + ": empty table");
    for (std::size_t i = 0; i < r_.size(); ++i) {
      if (!std::isfinite(r_[i]) || !std::isfinite(d_[i])) throw DataError(name + ": non-finite sample");
      if (i > 0 && !(r_[i] > r_[i - 1])) throw DataError(name + ": R not strictly increasing");
    }
    if (r_.size() >= 2) spline_ = NaturalCubicSpline(r_, d_);
  }

  const std::string& bra() const { return bra_; }
  const std::string& ket() const { return ket_; }
  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& d() const { return d_; }
  DipoleKind kind() const { return bra_ == ket_ ? DipoleKind::permanent : DipoleKind::transition; }

  bool connects(const std::string& a, const std::string& b) const {
    return (bra_ == a && ket_ == b) || (bra_ == b && ket_ == a);
  }

  double operator()(double R) const {
    if (r_.size() == 1 || R <= r_.front()) return d_.front();
    if (R >= r_.back()) return d_.back();
    return spline_(R);
  }

 private:
  std::string bra_, ket_;
  std::vector<double> r_, d_;
  NaturalCubicSpline spline_;
};

struct MoleculeDataset {
  std::string name;
  double reduced_mass = 0.0;  // amu
  std::vector<ElectronicState> states;
  std::map<std::string, PotentialCurve> potentials;
  std::vector<DipoleCurve> dipoles;
  std::string ground_label;
  double default_gamma = 6.0;  // MHz
  std::string description;

  const ElectronicState& state(const std::string& label) const {
    for (const auto& s : states)
      if (s.label == label) return s;
    throw DataError("unknown state '" + label + "'");
  }

  bool has_state(const std::string& label) const {
    return std::any_of(states.begin(), states.end(), [&](const auto& s) { return s.label == label; });
  }

  const PotentialCurve& potential(const std::string& label) const {
    auto it = potentials.find(label);
    if (it == potentials.end()) throw DataError("no potential for state '" + label + "'");
    return it->second;
  }

  /// Dipole curves with `label` at either end, in dataset order.
  std::vector<const DipoleCurve*> dipoles_touching(const std::string& label) const {
    std::vector<const DipoleCurve*> out;
    for (const auto& d : dipoles)
      if (d.bra() == label || d.ket() == label) out.push_back(&d);
    return out;
  }

  const DipoleCurve* dipole_between(const std::string& a, const std::string& b) const {
    for (const auto& d : dipoles)
      if (d.connects(a, b)) return &d;
    return nullptr;
  }

  void validate() const {
    if (!(reduced_mass > 0.0) || !std::isfinite(reduced_mass))
      throw DataError("reduced mass must be positive");
    if (!(default_gamma >= 0.0)) throw DataError("default_gamma must be non-negative");
    std::set<std::string> labels;
    for (const auto& s : states) {
      if (s.label.empty()) throw DataError("empty state label");
      if (!labels.insert(s.label).second) throw DataError("duplicate state label '" + s.label + "'");
      if (s.omega != 0 && s.omega != 1)
        throw DataError("state '" + s.label + "': omega must be 0 or 1");
      if (!std::isfinite(s.asymptote_energy))
        throw DataError("state '" + s.label + "': non-finite asymptote");
      if (s.rigid_r_e && !(*s.rigid_r_e > 0.0))
        throw DataError("state '" + s.label + "': rigid_r_e must be positive");
      if (!potentials.contains(s.label)) throw DataError("state '" + s.label + "' has no potential");
    }
    if (!labels.contains(ground_label)) throw DataError("ground_label '" + ground_label + "' does not resolve");
    for (const auto& [label, curve] : potentials)
      if (!labels.contains(label)) throw DataError("potential for unknown state '" + label + "'");
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& d : dipoles) {
      if (!labels.contains(d.bra())) throw DataError("dipole references unknown state '" + d.bra() + "'");
      if (!labels.contains(d.ket())) throw DataError("dipole references unknown state '" + d.ket() + "'");
      auto key = std::minmax(d.bra(), d.ket());
      if (!seen.insert({key.first, key.second}).second) {
        if (d.kind() == DipoleKind::permanent)
          throw DataError("more than one permanent dipole curve for state '" + d.bra() + "'");
        throw DataError("duplicate dipole curve " + d.bra() + "/" + d.ket());
      }
    }
  }
};

/// Potential of `curve` at R [bohr] in cm^-1.
inline double evaluate_potential(const PotentialCurve& curve, double R) { return curve(R); }

}  // namespace polarmol
