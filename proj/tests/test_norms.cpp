#include <gtest/gtest.h>

#include <cmath>

#include "loravg/norms.hpp"
#include "support.hpp"

using namespace loravg;
using loravg::test::Rng;

namespace {

MetricMeasureSpace three_atoms() { return MetricMeasureSpace::lattice(2, {1, 2, 1}); }

const FunctionOnSpace kF({3, 1, 2});

FunctionOnSpace chi_of_measure(const MetricMeasureSpace& s, std::size_t m) {
  std::vector<std::size_t> a;
  for (std::size_t i = 0; i < m; ++i) a.push_back(i);
  return indicator(s, a);
}

const double kPs[] = {1.5, 2.0, 3.0, 10.0};
const double kQs[] = {1.0, 2.0, 3.0, 3.5, kInf};

} // namespace

TEST(NormSpec, Validation) {
  EXPECT_THROW(NormSpec::plain(0.5, 1).validate(), domain_error);
  EXPECT_THROW(NormSpec::plain(2, 0.9).validate(), domain_error);
  EXPECT_THROW(NormSpec::double_star(1, 2).validate(), domain_error);
  EXPECT_NO_THROW(NormSpec::plain(1, 1).validate());
  EXPECT_TRUE(NormSpec::plain(2, 1).normable());
  EXPECT_FALSE(NormSpec::plain(2, 3).normable());
  EXPECT_TRUE(NormSpec::double_star(2, 3).normable());
}

TEST(LorentzNorm, IndicatorExamples) {
  const auto s = MetricMeasureSpace::lattice(9);
  const auto chi4 = chi_of_measure(s, 4);
  EXPECT_DOUBLE_EQ(lorentz_norm(s, chi4, NormSpec::plain(2, 1)), 4.0);
  EXPECT_DOUBLE_EQ(lorentz_norm(s, chi4, NormSpec::double_star(2, 1)), 8.0);
  EXPECT_DOUBLE_EQ(lorentz_norm(s, chi_of_measure(s, 9), NormSpec::plain(2, kInf)), 3.0);
  EXPECT_DOUBLE_EQ(lorentz_norm(s, chi_of_measure(s, 9), NormSpec::double_star(2, kInf)), 3.0);
}

TEST(LorentzNorm, WeightedExampleIsLebesgue) {
  EXPECT_DOUBLE_EQ(lorentz_norm(three_atoms(), kF, NormSpec::plain(2, 2)), std::sqrt(15.0));
}

TEST(LorentzNorm, ZeroAndInfiniteP) {
  const auto s = three_atoms();
  EXPECT_EQ(lorentz_norm(s, FunctionOnSpace(3, 0.0), NormSpec::double_star(3, 2)), 0.0);
  EXPECT_EQ(lorentz_norm(s, FunctionOnSpace(3, 0.0), NormSpec::plain(kInf, 2)), 0.0);
  EXPECT_THROW(lorentz_norm(s, kF, NormSpec::plain(kInf, 2)), not_in_space_error);
  EXPECT_DOUBLE_EQ(lorentz_norm(s, kF, NormSpec::plain(kInf, kInf)), 3.0);
}

TEST(LebesgueNorm, Examples) {
  const auto s = three_atoms();
  EXPECT_DOUBLE_EQ(lebesgue_norm(s, kF, 2), std::sqrt(15.0));
  EXPECT_EQ(lebesgue_norm(s, kF, kInf), 3.0);
  EXPECT_EQ(lebesgue_norm(s, FunctionOnSpace(3, 0.0), 2), 0.0);
}

TEST(ChiClosedForm, Examples) {
  EXPECT_DOUBLE_EQ(chi_norm_closed_form(1, NormSpec::plain(3, 2)), std::sqrt(1.5));
  EXPECT_DOUBLE_EQ(chi_norm_closed_form(8, NormSpec::plain(3, kInf)), 2.0);
  EXPECT_DOUBLE_EQ(chi_norm_closed_form(8, NormSpec::double_star(3, kInf)), 2.0);
  EXPECT_DOUBLE_EQ(chi_norm_closed_form(4, NormSpec::plain(2, 2)), 2.0);
  EXPECT_THROW(chi_norm_closed_form(4, NormSpec::double_star(1, 2)), domain_error);
  EXPECT_THROW(chi_norm_closed_form(0, NormSpec::plain(2, 2)), domain_error);
}

TEST(Holder, LambdaExamples) {
  EXPECT_DOUBLE_EQ(holder_lambda(2, 2), 1.0);
  EXPECT_EQ(holder_lambda(2, 1), 1.0);
  EXPECT_EQ(holder_lambda(2, kInf), 2.0);
  EXPECT_THROW(holder_lambda(1, 2), domain_error);
  EXPECT_THROW(holder_lambda(kInf, 2), domain_error);
  EXPECT_EQ(holder_constants(NormSpec::plain(2, 2), 0).alpha, 0.0);
}

TEST(Holder, Examples) {
  const auto s = MetricMeasureSpace::lattice(9);
  const std::vector<std::size_t> a{1, 2, 6, 7};
  auto h = holder_check(s, indicator(s, a), a, NormSpec::plain(2, 2));
  EXPECT_DOUBLE_EQ(h.lhs, 4.0);
  EXPECT_DOUBLE_EQ(h.rhs, 4.0);
  EXPECT_TRUE(holder_holds(h));

  const std::vector<std::size_t> off{3, 4};
  h = holder_check(s, indicator(s, a), off, NormSpec::plain(2, 2));
  EXPECT_EQ(h.lhs, 0.0);
  EXPECT_TRUE(holder_holds(h));

  Rng rng(31);
  const auto lat = MetricMeasureSpace::lattice(50);
  for (int i = 0; i < 20; ++i) {
    const auto f = test::random_function(rng, lat.size());
    EXPECT_TRUE(holder_holds(holder_check(lat, f, test::random_subset(rng, lat.size()), NormSpec::plain(3, 2))));
  }
}

TEST(Sandwich, Examples) {
  const auto s = MetricMeasureSpace::lattice(9);
  const auto n = norm_equivalence_check(s, chi_of_measure(s, 4), 2, 1);
  EXPECT_DOUBLE_EQ(n.plain, 4.0);
  EXPECT_DOUBLE_EQ(n.double_star, 8.0);
  EXPECT_TRUE(sandwich_holds(n, 2));
  const auto z = norm_equivalence_check(s, FunctionOnSpace(10, 0.0), 2, 1);
  EXPECT_EQ(z.plain, 0.0);
  EXPECT_EQ(z.double_star, 0.0);
  EXPECT_THROW(norm_equivalence_check(s, chi_of_measure(s, 4), 1, 1), domain_error);
}

// ---------------------------------------------------------------------------
// properties

TEST(NormProperties, IndicatorsMatchClosedForm) {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = test::random_space(rng);
    const auto a = test::random_subset(rng, s.size());
    const auto chi = indicator(s, a);
    const double mu = measure_of(s, a);
    for (double p : kPs)
      for (double q : kQs)
        for (auto v : {Variant::plain, Variant::double_star}) {
          const NormSpec spec{p, q, v};
          EXPECT_LE(test::rel_err(lorentz_norm(s, chi, spec), chi_norm_closed_form(mu, spec)), 1e-12)
              << "p=" << p << " q=" << q << " " << to_string(v);
        }
  }
}

TEST(NormProperties, LebesgueDiagonal) {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = test::random_space(rng);
    const auto f = test::random_function(rng, s.size());
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.25}) EXPECT_LE(test::rel_err(lorentz_norm(s, f, NormSpec::plain(p, p)), lebesgue_norm(s, f, p)), 1e-12);
  }
}

TEST(NormProperties, AgreesWithQuadrature) {
  Rng rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = test::random_space(rng, 12);
    const auto f = test::random_function(rng, s.size());
    for (double p : {1.5, 3.0})
      for (double q : {1.0, 2.0, 3.5, kInf})
        for (auto v : {Variant::plain, Variant::double_star}) {
          const NormSpec spec{p, q, v};
          EXPECT_LE(test::rel_err(lorentz_norm(s, f, spec), test::quadrature_lorentz(s, f, spec)), 1e-8)
              << "p=" << p << " q=" << q << " " << to_string(v);
        }
  }
}

TEST(NormProperties, MonotoneAndHomogeneous) {
  Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = test::random_space(rng);
    const auto f = test::random_function(rng, s.size());
    FunctionOnSpace g = f;
    for (auto& v : g.values) v *= test::uniform(rng, 0.0, 1.0);
    const double c = test::uniform(rng, -4.0, 4.0);
    for (double p : kPs)
      for (double q : kQs)
        for (auto v : {Variant::plain, Variant::double_star}) {
          const NormSpec spec{p, q, v};
          const double nf = lorentz_norm(s, f, spec);
          EXPECT_LE(lorentz_norm(s, g, spec), nf * (1 + 1e-12));
          EXPECT_LE(test::rel_err(lorentz_norm(s, c * f, spec), std::abs(c) * nf), 1e-12);
        }
  }
}

TEST(NormProperties, TriangleInequality) {
  Rng rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = test::random_space(rng);
    const auto f = test::random_function(rng, s.size());
    const auto g = test::random_function(rng, s.size());
    for (double p : kPs)
      for (double q : kQs)
        for (auto v : {Variant::plain, Variant::double_star}) {
          const NormSpec spec{p, q, v};
          if (!spec.normable()) continue;
          EXPECT_LE(lorentz_norm(s, f + g, spec), (lorentz_norm(s, f, spec) + lorentz_norm(s, g, spec)) * (1 + 1e-12))
              << "p=" << p << " q=" << q << " " << to_string(v);
        }
  }
}

TEST(NormProperties, SandwichRandom) {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = test::random_space(rng);
    const auto f = test::random_function(rng, s.size());
    for (double p : kPs)
      for (double q : kQs) EXPECT_TRUE(sandwich_holds(norm_equivalence_check(s, f, p, q), p));
  }
}

TEST(NormProperties, AbsoluteContinuity) {
  const auto s = MetricMeasureSpace::lattice(40);
  Rng rng(38);
  const auto f = test::random_function(rng, s.size());
  std::vector<std::size_t> a;
  for (std::size_t i = 0; i < s.size(); ++i) a.push_back(i);
  double prev = lorentz_norm(s, f, NormSpec::plain(2, 3));
  while (a.size() > 1) {
    a.pop_back();
    auto restricted = f;
    for (std::size_t i = a.size(); i < s.size(); ++i) restricted.values[i] = 0.0;
    const double cur = lorentz_norm(s, restricted, NormSpec::plain(2, 3));
    EXPECT_LE(cur, prev * (1 + 1e-12));
    prev = cur;
    EXPECT_DOUBLE_EQ(lorentz_norm(s, indicator(s, a), NormSpec::plain(2, kInf)), std::sqrt(double(a.size())));
  }
  auto last = f;
  std::fill(last.values.begin(), last.values.end(), 0.0);
  EXPECT_EQ(lorentz_norm(s, last, NormSpec::plain(2, 3)), 0.0);
}
