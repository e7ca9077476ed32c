#pragma once

// Shared test support: random spaces and functions for property tests, and
// oracles that evaluate the definitions directly (brute force over atoms and
// numerical quadrature), independent of the closed-form paths in the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "loravg/loravg.hpp"

namespace loravg::test {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random space: weighted lattice, planar point cloud or random connected graph.
inline MetricMeasureSpace random_space(Rng& rng, std::size_t max_atoms = 30) {
  const std::size_t n = uniform_index(rng, 1, max_atoms);
  std::vector<double> w(n);
  const bool unit = uniform_index(rng, 0, 3) == 0;
  for (auto& x : w) x = unit ? 1.0 : uniform(rng, 0.1, 3.0);
  switch (uniform_index(rng, 0, 2)) {
    case 0:
      return MetricMeasureSpace::lattice(n - 1, w);
    case 1: {
      std::vector<std::vector<double>> pts(n, std::vector<double>(2));
      for (auto& p : pts) p = {uniform(rng, 0.0, 10.0), uniform(rng, 0.0, 10.0)};
      const auto metric = static_cast<CloudMetric>(uniform_index(rng, 0, 2));
      return MetricMeasureSpace::from_cloud(pts, metric, w);
    }
    default: {
      std::vector<WeightedEdge> edges;
      for (std::size_t i = 1; i < n; ++i) edges.push_back({uniform_index(rng, 0, i - 1), i, std::round(uniform(rng, 1, 4))});
      for (std::size_t e = 0; e < n / 2; ++e)
        edges.push_back({uniform_index(rng, 0, n - 1), uniform_index(rng, 0, n - 1), std::round(uniform(rng, 1, 4))});
      std::erase_if(edges, [](const WeightedEdge& e) { return e.u == e.v; });
      return MetricMeasureSpace::from_graph(n, edges, w);
    }
  }
}

/// Random signed function; sometimes with repeated values and zeros.
inline FunctionOnSpace random_function(Rng& rng, std::size_t n) {
  FunctionOnSpace f(n, 0.0);
  const bool ties = uniform_index(rng, 0, 2) == 0;
  for (auto& v : f.values) {
    if (ties)
      v = static_cast<double>(static_cast<int>(uniform_index(rng, 0, 8)) - 4);
    else
      v = uniform(rng, -5.0, 5.0);
  }
  if (f.is_zero()) f[0] = 1.0;
  return f;
}

inline std::vector<std::size_t> random_subset(Rng& rng, std::size_t n) {
  std::vector<std::size_t> a;
  for (std::size_t i = 0; i < n; ++i)
    if (uniform_index(rng, 0, 1)) a.push_back(i);
  if (a.empty()) a.push_back(uniform_index(rng, 0, n - 1));
  return a;
}

// ---------------------------------------------------------------------------
// Oracles

/// mu_f(t) straight from the definition.
inline double brute_distribution(const MetricMeasureSpace& s, const FunctionOnSpace& f, double t) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f[i]) > t) m += s.weight(i);
  return m;
}

/// f*(t) = inf{s >= 0 : mu_f(s) <= t}; mu_f is right-continuous and jumps only
/// at values of |f|, so the infimum is attained in {0} ∪ {|f_i|}.
inline double brute_rearrangement(const MetricMeasureSpace& s, const FunctionOnSpace& f, double t) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> cands{0.0};
  for (double v : f.values) cands.push_back(std::abs(v));
  for (double c : cands)
    if (brute_distribution(s, f, c) <= t) best = std::min(best, c);
  return best;
}

/// int_0^t f* = int_0^inf min(t, mu_f(y)) dy, evaluated over the value levels.
inline double brute_primitive(const MetricMeasureSpace& s, const FunctionOnSpace& f, double t) {
  std::set<double> lv{0.0};
  for (double v : f.values) lv.insert(std::abs(v));
  std::vector<double> ys(lv.begin(), lv.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i)
    acc += (ys[i + 1] - ys[i]) * std::min(t, brute_distribution(s, f, ys[i]));
  return acc;
}

inline double brute_maximal(const MetricMeasureSpace& s, const FunctionOnSpace& f, double t) {
  return brute_primitive(s, f, t) / t;
}

/// Points where f* jumps: the values of mu_f at the levels of |f|.
inline std::vector<double> jump_points(const MetricMeasureSpace& s, const FunctionOnSpace& f) {
  std::set<double> pts{0.0};
  for (double v : f.values) pts.insert(brute_distribution(s, f, std::abs(v)));
  pts.insert(brute_distribution(s, f, 0.0));
  return {pts.begin(), pts.end()};
}

/// Lorentz norm by quadrature of the defining integral (or a sup over a grid
/// that includes left limits at the jump points).
inline double quadrature_lorentz(const MetricMeasureSpace& s, const FunctionOnSpace& f, const NormSpec& spec) {
  const double p = spec.p, q = spec.q;
  const bool star = spec.variant == Variant::double_star;
  auto value = [&](double t) { return star ? brute_maximal(s, f, t) : brute_rearrangement(s, f, t); };
  const auto pts = jump_points(s, f);
  const double end = pts.back();
  if (end == 0.0) return 0.0;
  if (std::isinf(q)) {
    double best = 0.0;
    auto probe = [&](double t) {
      if (t > 0) best = std::max(best, (std::isinf(p) ? 1.0 : std::pow(t, 1.0 / p)) * value(t));
    };
    for (double t : pts) probe(t * (1.0 - 1e-15));
    for (int k = -400; k <= 400; ++k) probe(end * std::pow(10.0, k / 100.0));
    if (std::isinf(p)) probe(1e-300);
    return best;
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto g = [&](double t) { return std::pow(t, q / p - 1.0) * std::pow(value(t), q); };
    // on each open piece f* is constant; evaluate at the midpoint to avoid
    // endpoint ambiguity in the brute-force step function
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    const double lv = star ? 0.0 : value(mid);
    if (!star)
      total += ts.integrate([&](double t) { return std::pow(t, q / p - 1.0) * std::pow(lv, q); }, pts[i], pts[i + 1],
                            1e-14);
    else
      total += ts.integrate(g, pts[i], pts[i + 1], 1e-14);
  }
  if (star) {
    boost::math::quadrature::exp_sinh<double> es;
    const double mass = brute_primitive(s, f, end);
    total += es.integrate([&](double u) { return std::pow(end + u, q / p - 1.0 - q) * std::pow(mass, q); }, 1e-14);
  }
  return std::pow(total, 1.0 / q);
}

inline double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

} // namespace loravg::test
