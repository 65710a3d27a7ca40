#pragma once

// Natural cubic spline through tabulated points.

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace polarmol {

class NaturalCubicSpline {
 public:
  NaturalCubicSpline() = default;

  NaturalCubicSpline(std::span<const double> x, std::span<const double> y)
      : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), 0.0) {
    if (x_.size() != y_.size()) throw std::invalid_argument("spline: size mismatch");
    if (x_.size() < 2) throw std::invalid_argument("spline: need at least two points");
    for (std::size_t i = 1; i < x_.size(); ++i)
      if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("spline: abscissae not increasing");
    solve_second_derivatives();
  }

  std::size_t size() const { return x_.size(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::span<const double> nodes() const { return x_; }
  std::span<const double> values() const { return y_; }

  /// Evaluates inside [front(), back()]; outside, continues the end cubic.
  double operator()(double t) const {
    const std::size_t k = interval(t);
    if (t == x_[k]) return y_[k];
    const double h = x_[k + 1] - x_[k];
    const double a = (x_[k + 1] - t) / h;
    const double b = (t - x_[k]) / h;
    return a * y_[k] + b * y_[k + 1] +
           ((a * a * a - a) * m_[k] + (b * b * b - b) * m_[k + 1]) * h * h / 6.0;
  }

  double derivative(double t) const {
    const std::size_t k = interval(t);
    const double h = x_[k + 1] - x_[k];
    const double a = (x_[k + 1] - t) / h;
    const double b = (t - x_[k]) / h;
    return (y_[k + 1] - y_[k]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m_[k] +
           (3.0 * b * b - 1.0) / 6.0 * h * m_[k + 1];
  }

 private:
  std::size_t interval(double t) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    if (it == x_.begin()) return 0;
    std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(k, x_.size() - 2);
  }

  // Thomas algorithm for the tridiagonal system with m_0 = m_{n-1} = 0.
  void solve_second_derivatives() {
    const std::size_t n = x_.size();
    if (n < 3) return;
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      const double diag = 2.0 * (h0 + h1);
      const double rhs = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
      const double denom = diag - h0 * c[i - 1];
      c[i] = h1 / denom;
      d[i] = (rhs - h0 * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = d[i] - c[i] * m_[i + 1];
      if (i == 1) break;
    }
  }

  std::vector<double> x_, y_, m_;
};

}  // namespace polarmol
