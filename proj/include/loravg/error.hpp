#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loravg {

/// Base class for every error raised on bad input data.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A value outside the mathematical domain of an operation
/// (nonpositive weight, t = 0 for f**, p <= 1 for Hölder constants, ...).
class domain_error : public error {
public:
  using error::error;
};

/// The function is not an element of the requested Lorentz space
/// (the only member of L^{inf,q}, q < inf, is the zero function).
class not_in_space_error : public domain_error {
public:
  using domain_error::domain_error;
};

/// An explicit distance matrix failed the metric axioms.
/// The offending atoms are reported as (i, j, k) with
/// d(i,j) > d(i,k) + d(k,j); for symmetry or diagonal failures k == j.
class metric_violation : public error {
public:
  metric_violation(std::size_t i, std::size_t j, std::size_t k, const std::string& what)
      : error(what), i_(i), j_(j), k_(k) {}

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  std::size_t k() const noexcept { return k_; }

private:
  std::size_t i_, j_, k_;
};

} // namespace loravg
