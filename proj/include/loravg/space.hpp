#pragma once

// Finite atomic metric measure spaces: atoms 0..n-1, a metric given by a
// dense distance matrix, and strictly positive atom weights.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "loravg/error.hpp"

namespace loravg {

inline constexpr std::size_t kDefaultMaxValidatedAtoms = 5000;

/// Validation cap for explicit matrices. LORAVG_MAX_ATOMS overrides the default.
inline std::size_t max_validated_atoms_from_env() {
  if (const char* env = std::getenv("LORAVG_MAX_ATOMS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxValidatedAtoms;
}

struct BuildOptions {
  std::size_t max_validated_atoms = max_validated_atoms_from_env();
  // Skips the O(n^3) axiom check. Only meant for metrics that are metrics by
  // construction; explicit matrices above the cap are rejected without it.
  bool skip_validation = false;
};

enum class CloudMetric { euclidean, l1, linf };

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 0.0;
};

class MetricMeasureSpace {
public:
  /// Explicit symmetric distance matrix (row-major, n*n entries).
  static MetricMeasureSpace from_matrix(std::size_t n, std::vector<double> dist,
                                        std::vector<double> weights,
                                        const BuildOptions& opts = {}) {
    if (dist.size() != n * n) {
      throw domain_error("distance matrix must have " + std::to_string(n * n) + " entries, got " +
                         std::to_string(dist.size()));
    }
    check_weights(n, weights);
    if (!opts.skip_validation) {
      if (n > opts.max_validated_atoms) {
        throw domain_error("matrix with " + std::to_string(n) + " atoms exceeds the validation cap of " +
                           std::to_string(opts.max_validated_atoms) +
                           " (raise LORAVG_MAX_ATOMS or skip validation)");
      }
      validate_metric(n, dist);
    }
    return MetricMeasureSpace(n, std::move(dist), std::move(weights));
  }

  static MetricMeasureSpace from_rows(const std::vector<std::vector<double>>& rows,
                                      std::vector<double> weights, const BuildOptions& opts = {}) {
    const std::size_t n = rows.size();
    std::vector<double> dist;
    dist.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) {
        throw domain_error("distance matrix row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
      }
      dist.insert(dist.end(), rows[i].begin(), rows[i].end());
    }
    return from_matrix(n, std::move(dist), std::move(weights), opts);
  }

  /// Atoms {0, ..., L} on the real line with d(x,y) = |x - y|.
  /// Empty weights mean unit weights.
  static MetricMeasureSpace lattice(std::size_t L, std::vector<double> weights = {}) {
    const std::size_t n = L + 1;
    if (weights.empty()) weights.assign(n, 1.0);
    check_weights(n, weights);
    std::vector<double> dist(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dist[i * n + j] = static_cast<double>(i > j ? i - j : j - i);
    return MetricMeasureSpace(n, std::move(dist), std::move(weights));
  }

  /// Point cloud under a coordinate metric. Coincident points are rejected.
  static MetricMeasureSpace from_cloud(const std::vector<std::vector<double>>& coords, CloudMetric metric,
                                       std::vector<double> weights = {}) {
    const std::size_t n = coords.size();
    if (weights.empty()) weights.assign(n, 1.0);
    check_weights(n, weights);
    const std::size_t dim = n == 0 ? 0 : coords[0].size();
    for (std::size_t i = 0; i < n; ++i) {
      if (coords[i].size() != dim)
        throw domain_error("coordinate " + std::to_string(i) + " has dimension " +
                           std::to_string(coords[i].size()) + ", expected " + std::to_string(dim));
      for (double c : coords[i])
        if (!std::isfinite(c)) throw domain_error("non-finite coordinate at atom " + std::to_string(i));
    }
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
          const double diff = std::abs(coords[i][c] - coords[j][c]);
          switch (metric) {
            case CloudMetric::euclidean: d += diff * diff; break;
            case CloudMetric::l1: d += diff; break;
            case CloudMetric::linf: d = std::max(d, diff); break;
          }
        }
        if (metric == CloudMetric::euclidean) d = std::sqrt(d);
        if (d == 0.0) throw metric_violation(i, j, j, "atoms " + std::to_string(i) + " and " +
                                                          std::to_string(j) + " coincide");
        dist[i * n + j] = dist[j * n + i] = d;
      }
    }
    return MetricMeasureSpace(n, std::move(dist), std::move(weights));
  }

  /// Shortest-path metric of an undirected graph with positive edge lengths.
  static MetricMeasureSpace from_graph(std::size_t n, const std::vector<WeightedEdge>& edges,
                                       std::vector<double> weights = {}) {
    if (weights.empty()) weights.assign(n, 1.0);
    check_weights(n, weights);
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n * n, inf);
    for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 0.0;
    for (const auto& e : edges) {
      if (e.u >= n || e.v >= n) throw domain_error("edge endpoint out of range");
      if (!(e.length > 0.0) || !std::isfinite(e.length))
        throw domain_error("edge lengths must be positive and finite");
      const double d = std::min(dist[e.u * n + e.v], e.length);
      dist[e.u * n + e.v] = dist[e.v * n + e.u] = d;
    }
    // Floyd-Warshall
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        const double dik = dist[i * n + k];
        if (dik == inf) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const double via = dik + dist[k * n + j];
          if (via < dist[i * n + j]) dist[i * n + j] = via;
        }
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dist[i * n + j] == inf)
          throw domain_error("graph is disconnected: no path between atoms " + std::to_string(i) + " and " +
                             std::to_string(j));
    return MetricMeasureSpace(n, std::move(dist), std::move(weights));
  }

  std::size_t size() const noexcept { return n_; }
  double distance(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> distances() const noexcept { return dist_; }
  double total_measure() const noexcept { return total_; }

  double diameter() const noexcept {
    double d = 0.0;
    for (double v : dist_) d = std::max(d, v);
    return d;
  }

  void check_atom(std::size_t x) const {
    if (x >= n_)
      throw domain_error("atom index " + std::to_string(x) + " out of range (space has " + std::to_string(n_) +
                         " atoms)");
  }

private:
  MetricMeasureSpace(std::size_t n, std::vector<double> dist, std::vector<double> weights)
      : n_(n), dist_(std::move(dist)), weights_(std::move(weights)) {
    total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }

  static void check_weights(std::size_t n, const std::vector<double>& w) {
    if (n == 0) throw domain_error("a space needs at least one atom");
    if (w.size() != n)
      throw domain_error("expected " + std::to_string(n) + " weights, got " + std::to_string(w.size()));
    for (std::size_t i = 0; i < n; ++i)
      if (!(w[i] > 0.0) || !std::isfinite(w[i]))
        throw domain_error("weight of atom " + std::to_string(i) + " must be positive and finite");
  }

  static void validate_metric(std::size_t n, const std::vector<double>& d) {
    auto at = [&](std::size_t i, std::size_t j) { return d[i * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
      if (at(i, i) != 0.0)
        throw metric_violation(i, i, i, "nonzero diagonal entry at (" + std::to_string(i) + "," +
                                            std::to_string(i) + ")");
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = at(i, j);
        if (!std::isfinite(v) || v < 0.0)
          throw metric_violation(i, j, j, "distance (" + std::to_string(i) + "," + std::to_string(j) +
                                              ") must be finite and nonnegative");
        if (v != at(j, i))
          throw metric_violation(i, j, j, "asymmetric distance at (" + std::to_string(i) + "," +
                                              std::to_string(j) + ")");
        if (v == 0.0)
          throw metric_violation(i, j, j, "distinct atoms " + std::to_string(i) + " and " + std::to_string(j) +
                                              " at distance 0");
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          const double direct = at(i, j);
          const double detour = at(i, k) + at(k, j);
          // relative slack absorbs rounding in matrices computed from coordinates
          if (direct > detour * (1.0 + 1e-12))
            throw metric_violation(i, j, k, "triangle violation at (" + std::to_string(i) + "," +
                                                std::to_string(j) + ") via " + std::to_string(k));
        }
  }

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<double> weights_;
  double total_ = 0.0;
};

// ---------------------------------------------------------------------------
// Balls

struct Ball {
  std::vector<std::size_t> atoms;  // ascending
  double measure = 0.0;
};

/// Closed ball B(x,r) = {y : d(x,y) <= r}.
inline Ball ball(const MetricMeasureSpace& space, std::size_t x, double r) {
  space.check_atom(x);
  Ball b;
  for (std::size_t y = 0; y < space.size(); ++y) {
    if (space.distance(x, y) <= r) {
      b.atoms.push_back(y);
      b.measure += space.weight(y);
    }
  }
  return b;
}

inline double ball_measure(const MetricMeasureSpace& space, std::size_t x, double r) {
  space.check_atom(x);
  double m = 0.0;
  for (std::size_t y = 0; y < space.size(); ++y)
    if (space.distance(x, y) <= r) m += space.weight(y);
  return m;
}

/// Measure of B(x,r) △ B(y,r).
inline double symm_diff_measure(const MetricMeasureSpace& space, std::size_t x, std::size_t y, double r) {
  space.check_atom(x);
  space.check_atom(y);
  double m = 0.0;
  for (std::size_t z = 0; z < space.size(); ++z) {
    const bool in_x = space.distance(x, z) <= r;
    const bool in_y = space.distance(y, z) <= r;
    if (in_x != in_y) m += space.weight(z);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Doubling

struct DoublingReport {
  double scale = 0.0;
  double gamma = 1.0;          // max_x mu(B(x,2s)) / mu(B(x,s))
  std::vector<double> ratios;  // per atom
  std::size_t argmax = 0;
  double outer = 1.0, inner = 1.0;  // mu(B(argmax,2s)), mu(B(argmax,s))
};

/// Tight s-doubling constant of a finite space.
inline DoublingReport doubling_constant(const MetricMeasureSpace& space, double s) {
  if (!(s > 0.0)) throw domain_error("doubling scale must be positive");
  DoublingReport rep;
  rep.scale = s;
  rep.ratios.resize(space.size());
  rep.gamma = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    const double outer = ball_measure(space, x, 2.0 * s), inner = ball_measure(space, x, s);
    const double ratio = outer / inner;
    rep.ratios[x] = ratio;
    if (ratio > rep.gamma) {
      rep.gamma = ratio;
      rep.argmax = x;
      rep.outer = outer;
      rep.inner = inner;
    }
  }
  return rep;
}

/// Greedy scan in index order: atom 0 first, then each atom whose distance
/// to every chosen atom exceeds delta. Stops after k atoms.
inline std::vector<std::size_t> separated_points(const MetricMeasureSpace& space, double delta, std::size_t k) {
  if (k == 0) throw domain_error("separated_points needs k >= 1");
  std::vector<std::size_t> chosen;
  for (std::size_t y = 0; y < space.size() && chosen.size() < k; ++y) {
    const bool far = std::all_of(chosen.begin(), chosen.end(),
                                 [&](std::size_t c) { return space.distance(c, y) > delta; });
    if (far) chosen.push_back(y);
  }
  return chosen;
}

// ---------------------------------------------------------------------------
// Vitali 5r subfamily

struct BallSpec {
  std::size_t center = 0;
  double radius = 0.0;

  friend bool operator==(const BallSpec&, const BallSpec&) = default;
};

using BallFamily = std::vector<BallSpec>;

/// Disjoint subfamily whose 5x enlargement covers the union of the family.
/// Balls are taken in decreasing radius (ties: lower center first); a ball is
/// kept unless it shares an atom with an already kept ball.
inline BallFamily vitali_subfamily(const MetricMeasureSpace& space, const BallFamily& family) {
  for (const auto& b : family) {
    space.check_atom(b.center);
    if (!(b.radius >= 0.0) || !std::isfinite(b.radius))
      throw domain_error("ball radii must be finite and nonnegative");
  }
  BallFamily order = family;
  std::stable_sort(order.begin(), order.end(), [](const BallSpec& a, const BallSpec& b) {
    if (a.radius != b.radius) return a.radius > b.radius;
    return a.center < b.center;
  });

  const std::size_t n = space.size();
  std::vector<char> taken(n, 0);
  BallFamily kept;
  for (const auto& b : order) {
    bool meets = false;
    for (std::size_t y = 0; y < n && !meets; ++y)
      meets = taken[y] && space.distance(b.center, y) <= b.radius;
    if (meets) continue;
    for (std::size_t y = 0; y < n; ++y)
      if (space.distance(b.center, y) <= b.radius) taken[y] = 1;
    kept.push_back(b);
  }

  // post hoc: disjointness holds by construction of `taken`; check coverage
  for (const auto& b : family) {
    for (std::size_t y = 0; y < n; ++y) {
      if (space.distance(b.center, y) > b.radius) continue;
      const bool covered = std::any_of(kept.begin(), kept.end(), [&](const BallSpec& k) {
        return space.distance(k.center, y) <= 5.0 * k.radius;
      });
      if (!covered) throw std::logic_error("vitali_subfamily: 5r enlargement misses atom " + std::to_string(y));
    }
  }
  return kept;
}

// ---------------------------------------------------------------------------

struct BoundednessReport {
  double radius = 0.0;
  double diameter = 0.0;
  double total_measure = 0.0;
  double min_ball_measure = 0.0;  // inf_x mu(B(x,r))
  double min_ratio = 1.0;         // inf_x mu(B(x,r)) / mu(B(x,2r))
  double gamma_r = 1.0;           // doubling constants at scales r, 2r, 4r
  double gamma_2r = 1.0;
  double gamma_4r = 1.0;
};

inline BoundednessReport boundedness_report(const MetricMeasureSpace& space, double r) {
  if (!(r > 0.0)) throw domain_error("radius must be positive");
  BoundednessReport rep;
  rep.radius = r;
  rep.diameter = space.diameter();
  rep.total_measure = space.total_measure();
  rep.min_ball_measure = std::numeric_limits<double>::infinity();
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < space.size(); ++x) {
    const double m = ball_measure(space, x, r);
    rep.min_ball_measure = std::min(rep.min_ball_measure, m);
    rep.min_ratio = std::min(rep.min_ratio, m / ball_measure(space, x, 2.0 * r));
  }
  rep.gamma_r = doubling_constant(space, r).gamma;
  rep.gamma_2r = doubling_constant(space, 2.0 * r).gamma;
  rep.gamma_4r = doubling_constant(space, 4.0 * r).gamma;
  return rep;
}

} // namespace loravg
