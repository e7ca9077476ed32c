#pragma once

// The averaging operator A_r f(x) = mu(B(x,r))^{-1} int_{B(x,r)} f dmu and
// checks of the quantitative estimates satisfied by it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "loravg/error.hpp"
#include "loravg/function.hpp"
#include "loravg/norms.hpp"
#include "loravg/rearrange.hpp"
#include "loravg/space.hpp"

namespace loravg {

/// Row x holds k_x(y) = w_y / mu(B(x,r)) for y in B(x,r).
class AveragingKernel {
public:
  struct Entry {
    std::size_t atom;
    double coeff;
  };

  AveragingKernel(const MetricMeasureSpace& space, double r) : radius_(r) {
    if (!(r > 0.0)) throw domain_error("averaging radius must be positive");
    const std::size_t n = space.size();
    rows_.resize(n);
    ball_measure_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      const Ball b = ball(space, x, r);
      ball_measure_[x] = b.measure;
      rows_[x].reserve(b.atoms.size());
      for (std::size_t y : b.atoms) rows_[x].push_back({y, space.weight(y) / b.measure});
    }
  }

  double radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<Entry>& row(std::size_t x) const { return rows_[x]; }
  double ball_measure(std::size_t x) const { return ball_measure_[x]; }

  FunctionOnSpace apply(const FunctionOnSpace& f) const {
    FunctionOnSpace out(rows_.size(), 0.0);
    for (std::size_t x = 0; x < rows_.size(); ++x) {
      double s = 0.0;
      for (const auto& e : rows_[x]) s += e.coeff * f[e.atom];
      out[x] = s;
    }
    return out;
  }

private:
  double radius_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<double> ball_measure_;
};

inline FunctionOnSpace average(const MetricMeasureSpace& space, const FunctionOnSpace& f, double r) {
  check_bound(space, f);
  return AveragingKernel(space, r).apply(f);
}

/// alpha(B(x,r)) / mu(B(x,r)): sup of |A_r f(x)| over ||f||_E <= 1.
inline double pointwise_bound(const MetricMeasureSpace& space, std::size_t x, double r, const NormSpec& spec) {
  if (!(r > 0.0)) throw domain_error("averaging radius must be positive");
  const double mu = ball_measure(space, x, r);
  return holder_constants(spec, mu).alpha / mu;
}

struct EquicontinuityModulus {
  double bound = 0.0;
  // sup_{||f||_p <= 1} |A_r f(x) - A_r f(y)|, only on the Lebesgue diagonal
  std::optional<double> exact;
};

namespace detail {

// h = chi_{B(x,r)}/mu(B(x,r)) - chi_{B(y,r)}/mu(B(y,r)), so that
// A_r f(x) - A_r f(y) = sum_z w_z h(z) f(z).
inline std::vector<double> kernel_difference_density(const MetricMeasureSpace& space, std::size_t x, std::size_t y,
                                                     double r) {
  const double mx = ball_measure(space, x, r);
  const double my = ball_measure(space, y, r);
  std::vector<double> h(space.size(), 0.0);
  for (std::size_t z = 0; z < space.size(); ++z) {
    if (space.distance(x, z) <= r) h[z] += 1.0 / mx;
    if (space.distance(y, z) <= r) h[z] -= 1.0 / my;
  }
  return h;
}

inline bool lebesgue_diagonal(const NormSpec& spec) {
  return spec.variant == Variant::plain && spec.p == spec.q && !std::isinf(spec.p);
}

} // namespace detail

/// |1/mu(B_x) - 1/mu(B_y)| alpha(B_x) + alpha(B_x △ B_y) / mu(B_y), per unit norm.
/// For plain p == q also the exact modulus ||h||_{L^{p'}(mu)}.
inline EquicontinuityModulus equicontinuity_modulus(const MetricMeasureSpace& space, std::size_t x, std::size_t y,
                                                    double r, const NormSpec& spec) {
  if (!(r > 0.0)) throw domain_error("averaging radius must be positive");
  const double mx = ball_measure(space, x, r);
  const double my = ball_measure(space, y, r);
  const double md = symm_diff_measure(space, x, y, r);
  EquicontinuityModulus m;
  m.bound = std::abs(1.0 / mx - 1.0 / my) * holder_constants(spec, mx).alpha + holder_constants(spec, md).alpha / my;
  if (detail::lebesgue_diagonal(spec)) {
    const auto h = detail::kernel_difference_density(space, x, y, r);
    m.exact = lebesgue_norm(space, FunctionOnSpace(h), spec.p / (spec.p - 1.0));
  }
  return m;
}

/// The unit-L^p function attaining the exact modulus:
/// sign(h)|h|^{p'-1} / ||h||_{p'}^{p'-1}. Zero when the two balls coincide.
inline FunctionOnSpace equicontinuity_extremal(const MetricMeasureSpace& space, std::size_t x, std::size_t y,
                                               double r, double p) {
  if (!(p > 1.0) || std::isinf(p)) throw domain_error("the extremal function needs 1 < p < inf");
  const double pc = p / (p - 1.0);
  const auto h = detail::kernel_difference_density(space, x, y, r);
  const double norm = lebesgue_norm(space, FunctionOnSpace(h), pc);
  FunctionOnSpace f(space.size(), 0.0);
  if (norm == 0.0) return f;
  for (std::size_t z = 0; z < space.size(); ++z) {
    const double a = std::abs(h[z]) / norm;
    f[z] = std::copysign(std::pow(a, pc - 1.0), h[z]);
    if (h[z] == 0.0) f[z] = 0.0;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Maximal-type inequality, rearrangement bound, operator bound

/// c = gamma_1 gamma_2 gamma_3 + 1 from the tight doubling constants at
/// scales r, 2r and 4r.
struct DistributionConstant {
  double gamma1 = 1.0, gamma2 = 1.0, gamma3 = 1.0;
  double c = 2.0;
};

inline DistributionConstant distribution_constant(const MetricMeasureSpace& space, double r) {
  if (!(r > 0.0)) throw domain_error("averaging radius must be positive");
  DistributionConstant k;
  const auto d1 = doubling_constant(space, r);
  const auto d2 = doubling_constant(space, 2.0 * r);
  const auto d3 = doubling_constant(space, 4.0 * r);
  k.gamma1 = d1.gamma;
  k.gamma2 = d2.gamma;
  k.gamma3 = d3.gamma;
  // one division instead of three: exact for integer ball measures
  k.c = (d1.outer * d2.outer * d3.outer) / (d1.inner * d2.inner * d3.inner) + 1.0;
  return k;
}

struct DistributionPoint {
  double t = 0.0;
  double lhs = 0.0;  // mu_{A_r f}(c t)
  double rhs = 0.0;  // (1/t) int_{|f| > t} |f|
};

struct DistributionReport {
  DistributionConstant constant;
  std::vector<DistributionPoint> points;
  double worst_ratio = 0.0;  // max lhs/rhs over points with rhs > 0
  bool pass = true;
};

/// Breakpoints of |f|, geometric midpoints between consecutive ones, and
/// half the smallest positive |f|.
inline std::vector<double> threshold_sweep(const MetricMeasureSpace& space, const FunctionOnSpace& f) {
  const StepFunction mu = distribution_function(space, f);
  const auto b = mu.breakpoints();
  std::vector<double> ts;
  if (b.size() < 2) return ts;
  ts.push_back(b[1] / 2.0);
  for (std::size_t i = 1; i < b.size(); ++i) {
    ts.push_back(b[i]);
    if (i + 1 < b.size()) ts.push_back(std::sqrt(b[i] * b[i + 1]));
  }
  return ts;
}

inline DistributionPoint distribution_point(const MetricMeasureSpace& space, const FunctionOnSpace& f,
                                            const FunctionOnSpace& avg, double c, double t) {
  if (!(t > 0.0)) throw domain_error("threshold t must be positive");
  DistributionPoint pt;
  pt.t = t;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (std::abs(avg[i]) > c * t) pt.lhs += space.weight(i);
    if (std::abs(f[i]) > t) pt.rhs += space.weight(i) * std::abs(f[i]);
  }
  pt.rhs /= t;
  return pt;
}

inline bool distribution_point_holds(const DistributionPoint& pt) { return pt.lhs <= pt.rhs * (1.0 + 1e-12); }

/// mu_{A_r f}(c t) <= (1/t) int_{|f| > t} |f| at a single t.
inline DistributionReport verify_distribution_inequality(const MetricMeasureSpace& space, const FunctionOnSpace& f,
                                                         double r, double t) {
  check_bound(space, f);
  DistributionReport rep;
  rep.constant = distribution_constant(space, r);
  const FunctionOnSpace avg = average(space, f, r);
  const auto pt = distribution_point(space, f, avg, rep.constant.c, t);
  rep.points.push_back(pt);
  rep.pass = distribution_point_holds(pt);
  if (pt.rhs > 0.0) rep.worst_ratio = pt.lhs / pt.rhs;
  return rep;
}

/// The same inequality over threshold_sweep(f).
inline DistributionReport verify_distribution_sweep(const MetricMeasureSpace& space, const FunctionOnSpace& f,
                                                    double r) {
  check_bound(space, f);
  DistributionReport rep;
  rep.constant = distribution_constant(space, r);
  const FunctionOnSpace avg = average(space, f, r);
  for (double t : threshold_sweep(space, f)) {
    const auto pt = distribution_point(space, f, avg, rep.constant.c, t);
    rep.points.push_back(pt);
    rep.pass = rep.pass && distribution_point_holds(pt);
    if (pt.rhs > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, pt.lhs / pt.rhs);
  }
  return rep;
}

struct RearrangementReport {
  double c = 2.0;
  double max_ratio = 0.0;  // max (A_r f)*(t) / f**(t)
  std::size_t points_checked = 0;
  bool pass = true;
};

/// (A_r f)*(t) <= c f**(t) at every positive breakpoint of f* and (A_r f)*,
/// at the midpoints between consecutive ones, and just above 0.
inline RearrangementReport verify_rearrangement_bound(const MetricMeasureSpace& space, const FunctionOnSpace& f,
                                                      double r) {
  check_bound(space, f);
  if (f.is_zero()) throw domain_error("the rearrangement bound is checked for f != 0");
  RearrangementReport rep;
  rep.c = distribution_constant(space, r).c;
  const StepFunction avg_star = rearrangement(space, average(space, f, r));
  const MaximalProfile fss = maximal_profile(space, f);

  std::vector<double> ts;
  for (double t : avg_star.breakpoints()) ts.push_back(t);
  for (double t : fss.breakpoints()) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<double> grid;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] > 0.0) grid.push_back(ts[i]);
    if (i + 1 < ts.size()) grid.push_back(0.5 * (ts[i] + ts[i + 1]));
  }
  grid.push_back(ts.back() * 2.0);

  for (double t : grid) {
    const double lhs = avg_star(t);
    const double bar = fss(t);
    ++rep.points_checked;
    rep.max_ratio = std::max(rep.max_ratio, lhs / bar);
    if (lhs > rep.c * bar * (1.0 + 1e-12)) rep.pass = false;
  }
  return rep;
}

struct OperatorBoundReport {
  double c = 2.0;
  double factor = 0.0;  // c p/(p-1)
  double lhs = 0.0;     // ||A_r f||
  double rhs = 0.0;     // factor ||f||
  bool pass = true;
};

/// ||A_r f||_E <= (c p/(p-1)) ||f||_E.
inline OperatorBoundReport verify_operator_bound(const MetricMeasureSpace& space, const FunctionOnSpace& f, double r,
                                                 const NormSpec& spec) {
  check_bound(space, f);
  if (!(spec.p > 1.0)) throw domain_error("the operator bound needs p > 1");
  OperatorBoundReport rep;
  rep.c = distribution_constant(space, r).c;
  rep.factor = rep.c * conjugate_factor(spec.p);
  rep.lhs = lorentz_norm(space, average(space, f, r), spec);
  rep.rhs = rep.factor * lorentz_norm(space, f, spec);
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

} // namespace loravg
