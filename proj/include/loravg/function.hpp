#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "loravg/error.hpp"
#include "loravg/space.hpp"

namespace loravg {

/// Real value per atom. Binding to a space is by size and checked at use.
struct FunctionOnSpace {
  std::vector<double> values;

  FunctionOnSpace() = default;
  explicit FunctionOnSpace(std::vector<double> v) : values(std::move(v)) {}
  FunctionOnSpace(std::size_t n, double fill) : values(n, fill) {}

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  bool is_zero() const {
    for (double v : values)
      if (v != 0.0) return false;
    return true;
  }

  friend bool operator==(const FunctionOnSpace&, const FunctionOnSpace&) = default;
};

inline void check_bound(const MetricMeasureSpace& space, const FunctionOnSpace& f) {
  if (f.size() != space.size())
    throw domain_error("function has " + std::to_string(f.size()) + " values but the space has " +
                       std::to_string(space.size()) + " atoms");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!std::isfinite(f[i])) throw domain_error("non-finite function value at atom " + std::to_string(i));
}

/// chi_A for a list of atoms.
inline FunctionOnSpace indicator(const MetricMeasureSpace& space, std::span<const std::size_t> atoms) {
  FunctionOnSpace f(space.size(), 0.0);
  for (std::size_t a : atoms) {
    space.check_atom(a);
    f[a] = 1.0;
  }
  return f;
}

inline double measure_of(const MetricMeasureSpace& space, std::span<const std::size_t> atoms) {
  std::vector<char> seen(space.size(), 0);
  double m = 0.0;
  for (std::size_t a : atoms) {
    space.check_atom(a);
    if (!seen[a]) m += space.weight(a);
    seen[a] = 1;
  }
  return m;
}

inline FunctionOnSpace operator*(double c, FunctionOnSpace f) {
  for (double& v : f.values) v *= c;
  return f;
}

inline FunctionOnSpace operator+(FunctionOnSpace f, const FunctionOnSpace& g) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += g[i];
  return f;
}

inline FunctionOnSpace operator-(FunctionOnSpace f, const FunctionOnSpace& g) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= g[i];
  return f;
}

} // namespace loravg
