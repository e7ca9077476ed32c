#pragma once

// Distribution function, decreasing rearrangement and f** of functions on a
// finite atomic space. Everything is exact step-function arithmetic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "loravg/function.hpp"
#include "loravg/space.hpp"
#include "loravg/step_function.hpp"

namespace loravg {

namespace detail {

// Distinct positive |f| values, descending, with merged weights.
inline std::vector<std::pair<double, double>> level_masses(const MetricMeasureSpace& space,
                                                           const FunctionOnSpace& f) {
  check_bound(space, f);
  std::vector<std::pair<double, double>> lv;
  lv.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    if (a > 0.0) lv.emplace_back(a, space.weight(i));
  }
  std::sort(lv.begin(), lv.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::pair<double, double>> merged;
  for (const auto& [v, w] : lv) {
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += w;
    else
      merged.emplace_back(v, w);
  }
  return merged;
}

} // namespace detail

/// mu_f(t) = mu({|f| > t}).
inline StepFunction distribution_function(const MetricMeasureSpace& space, const FunctionOnSpace& f) {
  const auto lv = detail::level_masses(space, f);
  const std::size_t m = lv.size();
  if (m == 0) return {};
  // cumulative masses from the top, summed in the same order as f* so the
  // two representations agree bit for bit
  std::vector<double> cum(m);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) cum[j] = acc += lv[j].second;

  std::vector<double> breaks{0.0};
  std::vector<double> levels;
  for (std::size_t j = m; j-- > 0;) {
    breaks.push_back(lv[j].first);
    levels.push_back(cum[j]);
  }
  return StepFunction(std::move(breaks), std::move(levels));
}

/// f*(t) = inf{s >= 0 : mu_f(s) <= t}.
inline StepFunction rearrangement(const MetricMeasureSpace& space, const FunctionOnSpace& f) {
  const auto lv = detail::level_masses(space, f);
  std::vector<double> breaks{0.0};
  std::vector<double> levels;
  double acc = 0.0;
  for (const auto& [v, w] : lv) {
    acc += w;
    breaks.push_back(acc);
    levels.push_back(v);
  }
  return StepFunction(std::move(breaks), std::move(levels));
}

inline MaximalProfile maximal_profile(const MetricMeasureSpace& space, const FunctionOnSpace& f) {
  return MaximalProfile(rearrangement(space, f));
}

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = int |f g| dmu, rhs = int_0^inf f* g* dt.
inline InequalitySides hardy_littlewood_check(const MetricMeasureSpace& space, const FunctionOnSpace& f,
                                              const FunctionOnSpace& g) {
  check_bound(space, f);
  check_bound(space, g);
  InequalitySides s;
  for (std::size_t i = 0; i < f.size(); ++i) s.lhs += space.weight(i) * std::abs(f[i] * g[i]);
  s.rhs = integrate_product(rearrangement(space, f), rearrangement(space, g));
  return s;
}

inline bool hardy_littlewood_holds(const InequalitySides& s) { return s.lhs <= s.rhs + 1e-12 * (1.0 + s.rhs); }

} // namespace loravg
