#pragma once

// Finite-sample diagnostics for compactness of A_r: greedy epsilon-nets of
// A_r(unit sphere), the separated witness sequence that rules compactness out
// on unbounded spaces, and the ball-wise simple-function approximation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "loravg/averaging.hpp"
#include "loravg/error.hpp"
#include "loravg/function.hpp"
#include "loravg/norms.hpp"
#include "loravg/space.hpp"

namespace loravg {

/// n random signed simple functions normalised to ||f||_spec = 1.
/// Each is a sum of 1 to 3 terms c * chi_{B(x,rho)} with x uniform over the
/// atoms, rho uniform over the distinct distances from x, c uniform in [-1,1].
inline std::vector<FunctionOnSpace> sample_unit_sphere(const MetricMeasureSpace& space, const NormSpec& spec,
                                                       std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n == 0) throw domain_error("sample size must be at least 1");
  if (std::isinf(spec.p) && !std::isinf(spec.q))
    throw not_in_space_error("L^{inf,q} with q < inf has no unit sphere");
  const std::size_t atoms = space.size();
  std::vector<std::vector<double>> radii(atoms);
  auto radii_of = [&](std::size_t x) -> const std::vector<double>& {
    auto& rs = radii[x];
    if (rs.empty()) {
      for (std::size_t y = 0; y < atoms; ++y) rs.push_back(space.distance(x, y));
      std::sort(rs.begin(), rs.end());
      rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    }
    return rs;
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> terms(1, 3);
  std::uniform_int_distribution<std::size_t> center(0, atoms - 1);
  std::uniform_real_distribution<double> level(-1.0, 1.0);

  std::vector<FunctionOnSpace> out;
  out.reserve(n);
  while (out.size() < n) {
    FunctionOnSpace f(atoms, 0.0);
    const int m = terms(rng);
    std::size_t first = 0;
    for (int j = 0; j < m; ++j) {
      const std::size_t x = center(rng);
      if (j == 0) first = x;
      const auto& rs = radii_of(x);
      std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
      const double rho = rs[pick(rng)];
      const double c = level(rng);
      for (std::size_t y = 0; y < atoms; ++y)
        if (space.distance(x, y) <= rho) f[y] += c;
    }
    if (f.is_zero()) f[first] = 1.0;
    const double norm = lorentz_norm(space, f, spec);
    out.push_back((1.0 / norm) * f);
  }
  return out;
}

struct CoveringReport {
  double epsilon = 0.0;
  std::size_t sample_size = 0;
  std::size_t k = 0;
  std::vector<std::size_t> net;  // indices into the sample, scan order
  double max_residual = 0.0;     // max over samples of the distance to the net
};

/// Greedy sequential net: scan in order, keep a point whose distance to every
/// kept point exceeds epsilon. `dist(i, j)` is any symmetric distance.
template <typename Distance>
CoveringReport greedy_net(std::size_t n, double epsilon, Distance&& dist) {
  if (!(epsilon > 0.0)) throw domain_error("epsilon must be positive");
  CoveringReport rep;
  rep.epsilon = epsilon;
  rep.sample_size = n;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    bool close = false;
    for (std::size_t c : rep.net) {
      const double d = dist(i, c);
      nearest[i] = std::min(nearest[i], d);
      if (d <= epsilon) close = true;
    }
    if (!close) {
      rep.net.push_back(i);
      nearest[i] = 0.0;
    }
  }
  // members added after i was scanned may sit closer
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c : rep.net) {
      if (c <= i) continue;
      nearest[i] = std::min(nearest[i], dist(i, c));
    }
    rep.max_residual = std::max(rep.max_residual, nearest[i]);
  }
  rep.k = rep.net.size();
  return rep;
}

inline CoveringReport covering_number(const MetricMeasureSpace& space, const std::vector<FunctionOnSpace>& points,
                                      double epsilon, const NormSpec& spec) {
  for (const auto& f : points) check_bound(space, f);
  return greedy_net(points.size(), epsilon,
                    [&](std::size_t i, std::size_t j) { return lorentz_norm(space, points[i] - points[j], spec); });
}

// ---------------------------------------------------------------------------
// Witness sequence

/// sup_x ||alpha(B(x,r)) chi_{B(x,2r)} / mu(B(x,r))||_E is at most this cap,
/// with gamma the r-doubling constant.
inline double witness_norm_cap(const NormSpec& spec, double gamma) {
  const double p = spec.p, q = spec.q;
  const double g = std::pow(gamma, 1.0 / p);
  if (std::isinf(q)) return p / (p - 1.0) * g;
  if (spec.variant == Variant::plain) return (p / q) * std::pow((q - 1.0) / (p - 1.0), 1.0 - 1.0 / q) * g;
  return std::pow(p, 1.0 + 1.0 / q) * std::pow(q - 1.0, 1.0 - 1.0 / q) / (q * (p - 1.0)) * g;
}

struct WitnessReport {
  double radius = 0.0;
  std::vector<std::size_t> centers;         // pairwise distance > 4r
  bool bounded_regime = false;              // fewer than two such centers
  double c_lower = 0.0;                     // inf_x mu(B(x,r)) / mu(B(x,2r))
  std::vector<std::vector<double>> distances;  // ||A_r f_n - A_r f_m||
  std::optional<double> min_distance;
  std::vector<double> witness_norms;        // ||f_n||
  double norm_cap = 0.0;
  bool supports_disjoint = true;            // A_r f_m = 0 on B(x_n, r), m != n
  bool pass = true;
  std::vector<FunctionOnSpace> images;      // A_r f_n
};

inline FunctionOnSpace witness_function(const MetricMeasureSpace& space, std::size_t center, double r,
                                        const NormSpec& spec) {
  const double mu = ball_measure(space, center, r);
  const double scale = holder_constants(spec, mu).alpha / mu;
  FunctionOnSpace f(space.size(), 0.0);
  for (std::size_t y = 0; y < space.size(); ++y)
    if (space.distance(center, y) <= 2.0 * r) f[y] = scale;
  return f;
}

inline WitnessReport witness_sequence(const MetricMeasureSpace& space, double r, std::size_t k, const NormSpec& spec) {
  spec.validate();
  if (!(spec.p > 1.0) || std::isinf(spec.p)) throw domain_error("witness sequences need 1 < p < inf");
  if (!(r > 0.0)) throw domain_error("averaging radius must be positive");
  WitnessReport rep;
  rep.radius = r;
  rep.c_lower = boundedness_report(space, r).min_ratio;
  rep.norm_cap = witness_norm_cap(spec, doubling_constant(space, r).gamma);
  rep.centers = separated_points(space, 4.0 * r, k);
  if (rep.centers.size() < 2) {
    rep.bounded_regime = true;
    return rep;
  }

  const AveragingKernel kernel(space, r);
  const std::size_t m = rep.centers.size();
  for (std::size_t c : rep.centers) {
    const FunctionOnSpace f = witness_function(space, c, r, spec);
    const double nf = lorentz_norm(space, f, spec);
    rep.witness_norms.push_back(nf);
    if (nf > rep.norm_cap * (1.0 + 1e-12)) rep.pass = false;
    rep.images.push_back(kernel.apply(f));
  }

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      for (std::size_t y = 0; y < space.size(); ++y)
        if (space.distance(rep.centers[a], y) <= r && rep.images[b][y] != 0.0) rep.supports_disjoint = false;
    }

  rep.distances.assign(m, std::vector<double>(m, 0.0));
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const double d = lorentz_norm(space, rep.images[a] - rep.images[b], spec);
      rep.distances[a][b] = rep.distances[b][a] = d;
      lo = std::min(lo, d);
    }
  rep.min_distance = lo;
  rep.pass = rep.pass && rep.supports_disjoint && lo >= rep.c_lower * (1.0 - 1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// Simple-function approximation

struct SimpleApproximation {
  BallFamily balls;                   // pairwise disjoint
  std::vector<double> coefficients;   // a_i = g(x_i)
  FunctionOnSpace approximation;      // sum a_i chi_{B(x_i, r_i)}
  double oscillation_tolerance = 0.0; // epsilon / (2 ||chi_X||)
  double remainder_norm = 0.0;        // ||g chi_{X \ union}||
  double error = 0.0;                 // ||g - approximation||
};

/// Every center x gets the largest radius rho with |g(y) - g(x)| <= tau on
/// B(x,rho), tau = epsilon/(2 ||chi_X||). Balls are then taken greedily in
/// decreasing measure (ties: lower center, larger radius), skipping any that
/// meets a kept ball, until ||g chi_remainder|| <= epsilon/2.
inline SimpleApproximation simple_approximation(const MetricMeasureSpace& space, const FunctionOnSpace& g,
                                                double epsilon, const NormSpec& spec) {
  check_bound(space, g);
  spec.validate();
  if (!(epsilon > 0.0)) throw domain_error("epsilon must be positive");
  const std::size_t n = space.size();
  SimpleApproximation out;
  out.oscillation_tolerance = epsilon / (2.0 * chi_norm_closed_form(space.total_measure(), spec));

  struct Candidate {
    std::size_t center;
    double radius;
    double measure;
  };
  std::vector<Candidate> cands;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> order(n);
    for (std::size_t y = 0; y < n; ++y) order[y] = y;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return space.distance(x, a) < space.distance(x, b); });
    // grow the ball one distance shell at a time
    double radius = 0.0, measure = 0.0, acc = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok;) {
      const double shell = space.distance(x, order[i]);
      std::size_t j = i;
      for (; j < n && space.distance(x, order[j]) == shell; ++j) {
        if (std::abs(g[order[j]] - g[x]) > out.oscillation_tolerance) ok = false;
        acc += space.weight(order[j]);
      }
      if (ok) {
        radius = shell;
        measure = acc;
      }
      i = j;
    }
    cands.push_back({x, radius, measure});
    // smaller admissible radii remain available when the largest ball collides
    double m = 0.0;
    for (std::size_t i = 0; i < n;) {
      const double shell = space.distance(x, order[i]);
      if (shell >= radius) break;
      std::size_t j = i;
      for (; j < n && space.distance(x, order[j]) == shell; ++j) m += space.weight(order[j]);
      cands.push_back({x, shell, m});
      i = j;
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.measure != b.measure) return a.measure > b.measure;
    if (a.center != b.center) return a.center < b.center;
    return a.radius > b.radius;
  });

  std::vector<char> covered(n, 0);
  out.approximation = FunctionOnSpace(n, 0.0);
  auto remainder_norm = [&]() {
    FunctionOnSpace rest(n, 0.0);
    for (std::size_t y = 0; y < n; ++y)
      if (!covered[y]) rest[y] = g[y];
    return lorentz_norm(space, rest, spec);
  };
  out.remainder_norm = remainder_norm();
  for (const auto& c : cands) {
    if (out.remainder_norm <= epsilon / 2.0) break;
    if (covered[c.center]) continue;
    bool meets = false;
    for (std::size_t y = 0; y < n && !meets; ++y) meets = covered[y] && space.distance(c.center, y) <= c.radius;
    if (meets) continue;
    for (std::size_t y = 0; y < n; ++y)
      if (space.distance(c.center, y) <= c.radius) {
        covered[y] = 1;
        out.approximation[y] = g[c.center];
      }
    out.balls.push_back({c.center, c.radius});
    out.coefficients.push_back(g[c.center]);
    out.remainder_norm = remainder_norm();
  }
  out.error = lorentz_norm(space, g - out.approximation, spec);
  return out;
}

// ---------------------------------------------------------------------------
// Probe over a family of spaces

struct LabeledSpace {
  double label = 0.0;  // e.g. L for lattice(L)
  MetricMeasureSpace space;
};

struct ProbeRow {
  double label = 0.0;
  std::size_t k = 0;                   // greedy covering number of A_r(sample)
  std::optional<double> witness_min;   // min pairwise witness-image distance
  double c_lower = 0.0;
  std::size_t witness_k = 0;           // greedy net size of witness images at epsilon
};

/// Per space: n unit-sphere samples (seed + index), their images under A_r,
/// the greedy covering number at epsilon, and the witness sequence over all
/// available 4r-separated centers.
inline std::vector<ProbeRow> compactness_probe(const std::vector<LabeledSpace>& family, double r, const NormSpec& spec,
                                               double epsilon, std::size_t n, std::uint64_t seed) {
  std::vector<ProbeRow> rows;
  for (std::size_t idx = 0; idx < family.size(); ++idx) {
    const auto& space = family[idx].space;
    const AveragingKernel kernel(space, r);
    std::vector<FunctionOnSpace> images;
    for (const auto& f : sample_unit_sphere(space, spec, n, seed + idx)) images.push_back(kernel.apply(f));

    ProbeRow row;
    row.label = family[idx].label;
    row.k = covering_number(space, images, epsilon, spec).k;
    const WitnessReport w = witness_sequence(space, r, space.size(), spec);
    row.c_lower = w.c_lower;
    row.witness_min = w.min_distance;
    row.witness_k = w.bounded_regime ? w.centers.size() : covering_number(space, w.images, epsilon, spec).k;
    rows.push_back(row);
  }
  return rows;
}

} // namespace loravg
