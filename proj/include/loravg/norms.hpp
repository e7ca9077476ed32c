#pragma once

// Lorentz norms ||f||_{p,q} (plain) and ||f||_{(p,q)} (double-star, built on
// f**), Lebesgue norms, indicator closed forms and the Hölder constants.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "loravg/error.hpp"
#include "loravg/function.hpp"
#include "loravg/rearrange.hpp"
#include "loravg/space.hpp"
#include "loravg/step_function.hpp"

namespace loravg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Variant { plain, double_star };

inline const char* to_string(Variant v) { return v == Variant::plain ? "plain" : "double-star"; }

struct NormSpec {
  double p = 2.0;
  double q = 2.0;
  Variant variant = Variant::plain;

  static NormSpec plain(double p, double q) { return {p, q, Variant::plain}; }
  static NormSpec double_star(double p, double q) { return {p, q, Variant::double_star}; }

  void validate() const {
    if (!(p >= 1.0)) throw domain_error("p must lie in [1, inf], got " + std::to_string(p));
    if (!(q >= 1.0)) throw domain_error("q must lie in [1, inf], got " + std::to_string(q));
    if (variant == Variant::double_star && !(p > 1.0))
      throw domain_error("the double-star norm needs p > 1");
  }

  /// ||.||_{p,q} is a norm for 1 <= q <= p; ||.||_{(p,q)} whenever p > 1.
  bool normable() const {
    if (variant == Variant::double_star) return p > 1.0;
    return q <= p;
  }

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

namespace detail {

// b^e - a^e for 0 <= a < b without cancellation when b/a is close to 1.
inline double pow_diff(double b, double a, double e) {
  if (a == 0.0) return std::pow(b, e);
  return std::pow(a, e) * std::expm1(e * std::log1p((b - a) / a));
}

// int_a^b t^e dt for 0 < a < b (or a == 0 with e > -1).
inline double power_integral(double a, double b, double e) {
  const double e1 = e + 1.0;
  if (std::abs(e1) <= 1e-14 * std::max(1.0, std::abs(e))) return std::log1p((b - a) / a);
  return pow_diff(b, a, e1) / e1;
}

inline bool is_small_integer(double q) { return q == std::floor(q) && q <= 64.0; }

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// int over [lo, hi] of t^{q/p - 1} (F(t)/t)^q with F(t) = a + v t, a > 0.
inline double double_star_piece(double a, double v, double lo, double hi, double p, double q) {
  const double base = q / p - 1.0 - q;
  if (is_small_integer(q)) {
    // binomial expansion of (a + v t)^q; every term is nonnegative
    const int qi = static_cast<int>(q);
    double s = 0.0;
    for (int k = 0; k <= qi; ++k) {
      const double coeff = binomial(qi, k) * std::pow(a, qi - k) * std::pow(v, k);
      if (coeff == 0.0) continue;
      s += coeff * power_integral(lo, hi, base + k);
    }
    return s;
  }
  // t = e^u turns the integrand into (t^{1/p} f**(t))^q, smooth in u
  auto integrand = [&](double u) {
    const double t = std::exp(u);
    return std::pow(std::pow(t, 1.0 / p) * (a / t + v), q);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, std::log(lo), std::log(hi), 8,
                                                                       1e-12);
}

inline double plain_norm(const StepFunction& fs, double p, double q) {
  const auto t = fs.breakpoints();
  const auto v = fs.levels();
  const double top = v[0];
  if (std::isinf(q)) {
    if (std::isinf(p)) return top;
    double best = 0.0;
    // sup of t^{1/p} v_i on [t_i, t_{i+1}) is approached at the right end
    for (std::size_t i = 0; i < v.size(); ++i) best = std::max(best, std::pow(t[i + 1], 1.0 / p) * (v[i] / top));
    return top * best;
  }
  const double e = q / p;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::pow(v[i] / top, q) * pow_diff(t[i + 1], t[i], e);
  return top * std::pow(s / e, 1.0 / q);
}

inline double double_star_norm(const StepFunction& fs, double p, double q) {
  const double top = fs.levels()[0];
  const MaximalProfile prof(fs);
  const auto t = prof.breakpoints();
  // profile values scaled so the largest level is 1
  std::vector<double> slope(prof.slopes().begin(), prof.slopes().end());
  for (double& x : slope) x /= top;
  const std::size_t k = slope.size();
  const double mass = prof.total() / top;

  if (std::isinf(q)) {
    if (std::isinf(p)) return top;  // sup f** = f**(0+) = max |f|
    // g(t) = t^{1/p - 1} F(t) increases on the first piece, is convex-shaped on
    // the others (interior critical point t* = a(p-1)/v is a minimum) and
    // decreases on the tail, so the sup is attained at a breakpoint.
    double best = 0.0;
    for (std::size_t i = 1; i <= k; ++i) best = std::max(best, std::pow(t[i], 1.0 / p - 1.0) * (prof.node_values()[i] / top));
    return top * best;
  }

  double s = std::pow(slope[0], q) * (p / q) * std::pow(t[1], q / p);
  for (std::size_t i = 1; i < k; ++i) s += double_star_piece(prof.intercept(i) / top, slope[i], t[i], t[i + 1], p, q);
  s += std::pow(mass, q) * std::pow(t[k], q / p - q) / (q - q / p);
  return top * std::pow(s, 1.0 / q);
}

} // namespace detail

/// ||f*||_{L^q(t^{q/p-1} dt)} or the f** analogue, computed in closed form
/// except for the double-star variant with non-integer q (adaptive
/// Gauss-Kronrod per piece, closed-form tail).
inline double lorentz_norm(const MetricMeasureSpace& space, const FunctionOnSpace& f, const NormSpec& spec) {
  spec.validate();
  const StepFunction fs = rearrangement(space, f);
  if (fs.is_zero()) return 0.0;
  if (std::isinf(spec.p) && !std::isinf(spec.q))
    throw not_in_space_error("L^{inf,q} with q < inf contains only the zero function");
  return spec.variant == Variant::plain ? detail::plain_norm(fs, spec.p, spec.q)
                                        : detail::double_star_norm(fs, spec.p, spec.q);
}

inline double lebesgue_norm(const MetricMeasureSpace& space, const FunctionOnSpace& f, double p) {
  check_bound(space, f);
  if (!(p >= 1.0)) throw domain_error("Lebesgue exponent must lie in [1, inf]");
  double top = 0.0;
  for (double v : f.values) top = std::max(top, std::abs(v));
  if (top == 0.0 || std::isinf(p)) return top;
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += space.weight(i) * std::pow(std::abs(f[i]) / top, p);
  return top * std::pow(s, 1.0 / p);
}

/// Norm of chi_A from mu(A) alone.
inline double chi_norm_closed_form(double measure_a, const NormSpec& spec) {
  spec.validate();
  if (!(measure_a > 0.0)) throw domain_error("mu(A) must be positive");
  const double p = spec.p, q = spec.q;
  if (std::isinf(q)) return std::isinf(p) ? 1.0 : std::pow(measure_a, 1.0 / p);
  if (std::isinf(p)) throw not_in_space_error("L^{inf,q} with q < inf contains only the zero function");
  if (spec.variant == Variant::plain) return std::pow(p / q, 1.0 / q) * std::pow(measure_a, 1.0 / p);
  return std::pow(p * p / (q * (p - 1.0)), 1.0 / q) * std::pow(measure_a, 1.0 / p);
}

struct HolderConstants {
  double lambda = 1.0;
  double alpha = 0.0;
};

/// lambda = (p(q-1)/(q(p-1)))^{1-1/q}; q = 1 gives 1 and q = inf gives p/(p-1),
/// the prefactors of ||chi_A||_{p', q'}.
inline double holder_lambda(double p, double q) {
  if (!(p > 1.0) || std::isinf(p)) throw domain_error("Hölder constants need 1 < p < inf");
  if (!(q >= 1.0)) throw domain_error("q must lie in [1, inf]");
  if (q == 1.0) return 1.0;
  if (std::isinf(q)) return p / (p - 1.0);
  return std::pow(p * (q - 1.0) / (q * (p - 1.0)), 1.0 - 1.0 / q);
}

/// alpha(A) = lambda mu(A)^{1-1/p}; alpha of the empty set is 0.
inline HolderConstants holder_constants(const NormSpec& spec, double measure_a) {
  if (!(measure_a >= 0.0)) throw domain_error("mu(A) must be nonnegative");
  HolderConstants h;
  h.lambda = holder_lambda(spec.p, spec.q);
  h.alpha = h.lambda * std::pow(measure_a, 1.0 - 1.0 / spec.p);
  return h;
}

/// lhs = int_A |f|, rhs = alpha(A) ||f||_{p,q}.
inline InequalitySides holder_check(const MetricMeasureSpace& space, const FunctionOnSpace& f,
                                    std::span<const std::size_t> atoms, const NormSpec& spec) {
  check_bound(space, f);
  std::vector<char> in(space.size(), 0);
  for (std::size_t a : atoms) {
    space.check_atom(a);
    in[a] = 1;
  }
  InequalitySides s;
  double mu = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (in[i]) {
      s.lhs += space.weight(i) * std::abs(f[i]);
      mu += space.weight(i);
    }
  s.rhs = holder_constants(spec, mu).alpha * lorentz_norm(space, f, NormSpec::plain(spec.p, spec.q));
  return s;
}

inline bool holder_holds(const InequalitySides& s) { return s.lhs <= s.rhs * (1.0 + 1e-12); }

struct NormPair {
  double plain = 0.0;
  double double_star = 0.0;
};

/// Both variants of the same (p, q). For p > 1,
/// plain <= double_star <= p/(p-1) * plain.
inline NormPair norm_equivalence_check(const MetricMeasureSpace& space, const FunctionOnSpace& f, double p,
                                       double q) {
  if (!(p > 1.0)) throw domain_error("norm equivalence needs p > 1");
  return {lorentz_norm(space, f, NormSpec::plain(p, q)), lorentz_norm(space, f, NormSpec::double_star(p, q))};
}

inline double conjugate_factor(double p) { return std::isinf(p) ? 1.0 : p / (p - 1.0); }

inline bool sandwich_holds(const NormPair& n, double p, double slack = 1e-10) {
  return n.plain <= n.double_star * (1.0 + slack) && n.double_star <= conjugate_factor(p) * n.plain * (1.0 + slack);
}

} // namespace loravg
