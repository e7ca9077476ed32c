#pragma once

// Nonincreasing right-continuous step functions on [0, inf) and the
// piecewise-linear primitive used for f**.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "loravg/error.hpp"

namespace loravg {

/// Value levels[i] on [breakpoints[i], breakpoints[i+1]), zero from
/// breakpoints.back() on. breakpoints[0] == 0, breakpoints strictly
/// increasing, levels strictly decreasing and positive. The zero function has
/// breakpoints {0} and no levels.
class StepFunction {
public:
  StepFunction() : breaks_{0.0} {}

  StepFunction(std::vector<double> breakpoints, std::vector<double> levels)
      : breaks_(std::move(breakpoints)), levels_(std::move(levels)) {
    if (breaks_.empty() || breaks_.front() != 0.0)
      throw domain_error("step function breakpoints must start at 0");
    if (breaks_.size() != levels_.size() + 1)
      throw domain_error("step function needs exactly one more breakpoint than levels");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
      if (!(breaks_[i] > breaks_[i - 1]) || !std::isfinite(breaks_[i]))
        throw domain_error("step function breakpoints must be finite and strictly increasing");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (!(levels_[i] > 0.0) || !std::isfinite(levels_[i]))
        throw domain_error("step function levels must be finite and positive");
      if (i > 0 && !(levels_[i] < levels_[i - 1]))
        throw domain_error("step function levels must be strictly decreasing");
    }
  }

  std::span<const double> breakpoints() const noexcept { return breaks_; }
  std::span<const double> levels() const noexcept { return levels_; }
  std::size_t pieces() const noexcept { return levels_.size(); }
  bool is_zero() const noexcept { return levels_.empty(); }

  /// Right end of the support, t_k.
  double support_end() const noexcept { return breaks_.back(); }

  double operator()(double t) const {
    if (t < 0.0) throw domain_error("step functions live on [0, inf)");
    // first breakpoint strictly greater than t
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    const auto idx = static_cast<std::size_t>(it - breaks_.begin());
    if (idx == breaks_.size()) return 0.0;
    return levels_[idx - 1];
  }

  /// Integral over [0, inf).
  double integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < levels_.size(); ++i) s += levels_[i] * (breaks_[i + 1] - breaks_[i]);
    return s;
  }

  /// Lebesgue measure of {s >= 0 : value(s) > y}.
  double measure_above(double y) const {
    double m = 0.0;
    for (std::size_t i = 0; i < levels_.size(); ++i)
      if (levels_[i] > y) m = breaks_[i + 1];
    return m;
  }

private:
  std::vector<double> breaks_;
  std::vector<double> levels_;
};

/// Integral over [0, inf) of a(t) * b(t), exact over the merged breakpoints.
inline double integrate_product(const StepFunction& a, const StepFunction& b) {
  const auto ta = a.breakpoints();
  const auto tb = b.breakpoints();
  const auto va = a.levels();
  const auto vb = b.levels();
  double s = 0.0;
  std::size_t i = 0, j = 0;
  double lo = 0.0;
  while (i < va.size() && j < vb.size()) {
    const double hi = std::min(ta[i + 1], tb[j + 1]);
    s += va[i] * vb[j] * (hi - lo);
    lo = hi;
    if (ta[i + 1] == hi) ++i;
    if (tb[j + 1] == hi) ++j;
  }
  return s;
}

/// F(t) = int_0^t f*(s) ds stored at the breakpoints of f*; f**(t) = F(t)/t.
/// On [t_i, t_{i+1}) F(t) = intercept_i + slope_i * t with slope_i the f* level.
class MaximalProfile {
public:
  MaximalProfile() = default;

  explicit MaximalProfile(const StepFunction& fstar)
      : breaks_(fstar.breakpoints().begin(), fstar.breakpoints().end()),
        slopes_(fstar.levels().begin(), fstar.levels().end()) {
    nodes_.assign(breaks_.size(), 0.0);
    for (std::size_t i = 0; i < slopes_.size(); ++i)
      nodes_[i + 1] = nodes_[i] + slopes_[i] * (breaks_[i + 1] - breaks_[i]);
  }

  std::span<const double> breakpoints() const noexcept { return breaks_; }
  std::span<const double> node_values() const noexcept { return nodes_; }
  std::span<const double> slopes() const noexcept { return slopes_; }

  /// F(t_k), the L^1 mass of f.
  double total() const noexcept { return nodes_.back(); }

  /// F(t_i) - slope_i * t_i; nonnegative by concavity, zero on the first piece.
  double intercept(std::size_t i) const {
    if (i == 0) return 0.0;
    return std::max(0.0, nodes_[i] - slopes_[i] * breaks_[i]);
  }

  double primitive(double t) const {
    if (t < 0.0) throw domain_error("primitive is defined on [0, inf)");
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    const auto idx = static_cast<std::size_t>(it - breaks_.begin());
    if (idx == breaks_.size()) return nodes_.back();
    const std::size_t i = idx - 1;
    return nodes_[i] + slopes_[i] * (t - breaks_[i]);
  }

  /// f**(t) for t > 0.
  double operator()(double t) const {
    if (!(t > 0.0)) throw domain_error("f** is defined for t > 0 only");
    return primitive(t) / t;
  }

private:
  std::vector<double> breaks_{0.0};
  std::vector<double> nodes_{0.0};
  std::vector<double> slopes_;
};

} // namespace loravg
