#include <gtest/gtest.h>

#include <cmath>

#include "horolab/core/rng.hpp"
#include "horolab/dirichlet/dirichlet.hpp"

using namespace horolab;
using namespace horolab::dirichlet;

namespace {

const double kSqrt2m1 = std::sqrt(2.0) - 1;

DIQuery random_query(CounterRng& rng, Form f, double mu) {
  const int n = static_cast<int>(rng.integer(1, 3));
  std::vector<double> xi;
  std::vector<long long> nb;
  for (int i = 0; i < n; ++i) {
    xi.push_back(rng.uniform(-1, 1));
    nb.push_back(rng.integer(1, 8));
  }
  return f == Form::Primal ? DIQuery::primal(xi, nb, mu) : DIQuery::dual(xi, nb, mu);
}

}  // namespace

TEST(Dirichlet, PrimalExamples) {
  auto w = di_witness(DIQuery::primal_exact({make_rational(1, 3)}, {3}, make_rational(1, 2)));
  ASSERT_TRUE(w.found);
  EXPECT_EQ(w.q, std::vector<long long>{3});
  EXPECT_EQ(w.p, std::vector<long long>{1});

  // q = 1 already works (0.414 <= 0.45); (2, 1) is a witness too.
  auto q = DIQuery::primal({kSqrt2m1}, {2}, 0.9);
  w = di_witness(q);
  ASSERT_TRUE(w.found);
  EXPECT_TRUE(check_witness(q, w));
  WitnessResult two{true, false, {2}, {1}, 0};
  EXPECT_TRUE(check_witness(q, two));
  EXPECT_FALSE(di_witness(DIQuery::primal({kSqrt2m1}, {1}, 0.4)).found);
}

TEST(Dirichlet, DualExamples) {
  auto q = DIQuery::dual_exact({make_rational(1, 2), make_rational(1, 3)}, {2, 3}, make_rational(1, 2));
  auto w = di_dual_witness(q);
  ASSERT_TRUE(w.found);
  EXPECT_EQ(w.q, std::vector<long long>{6});
  EXPECT_EQ(w.p, (std::vector<long long>{3, 2}));

  q = DIQuery::dual({kSqrt2m1, std::sqrt(3.0) - 1}, {2, 2}, 0.9);
  w = di_dual_witness(q);
  ASSERT_TRUE(w.found);
  EXPECT_TRUE(check_witness(q, w));
  // Minimality: no smaller |q| passes, by direct scan.
  for (long long k = 1; k < w.q[0]; ++k) {
    WitnessResult c;
    c.found = true;
    c.q = {k};
    c.p = {std::llround(q.xi[0] * k), std::llround(q.xi[1] * k)};
    EXPECT_FALSE(check_witness(q, c));
  }
  EXPECT_FALSE(di_dual_witness(DIQuery::dual({kSqrt2m1, std::sqrt(3.0) - 1}, {2, 2}, 1e-9)).found);
}

TEST(Dirichlet, RejectsBadQueries) {
  EXPECT_THROW(DIQuery::primal({0.5}, {0}, 0.5), std::invalid_argument);
  EXPECT_THROW(DIQuery::primal({0.5}, {2}, 1.5), std::invalid_argument);
  EXPECT_THROW(DIQuery::primal({0.5, 0.2}, {2}, 0.5), std::invalid_argument);
  EXPECT_THROW(di_dual_witness(DIQuery::primal({0.5}, {2}, 0.5)), std::invalid_argument);
  EXPECT_THROW(di_witness(DIQuery::primal({0.5, 0.5}, {10000, 10000}, 0.5)), BudgetExceeded);
}

TEST(Dani, Examples) {
  auto q = DIQuery::primal_exact({make_rational(2, 5)}, {3}, Rational(1));
  auto lat = dani_lattice(q);
  EXPECT_NEAR(lat.basis.det(), 1.0, 1e-15);
  EXPECT_NEAR(lat.half_widths[0], 1.0 / 3, 1e-15);
  auto w = box_point_search(lat);
  ASSERT_TRUE(w.found);
  EXPECT_TRUE(check_witness(q, w));
  // The witness (2, 1) has coefficients (-p, q) = (-1, 2) and lands on (-0.2, 2).
  std::vector<double> pt(2, 0.0);
  for (int k = 0; k < 2; ++k) pt[k] = -1 * lat.basis.rows(0, k) + 2 * lat.basis.rows(1, k);
  EXPECT_NEAR(pt[0], -0.2, 1e-15);
  EXPECT_EQ(pt[1], 2.0);
  EXPECT_LE(std::fabs(pt[0]), lat.half_widths[0]);

  auto z = dani_lattice(DIQuery::primal({0.0, 0.0}, {1, 1}, 1.0));
  EXPECT_EQ(z.basis.rows, Matrix<double>::identity(3));
  EXPECT_TRUE(box_point_search(z).found);
}

TEST(Dani, VerdictEquivalence) {
  CounterRng rng(31, 1);
  const double mus[] = {0.3, 0.6, 0.9};
  for (int i = 0; i < 500; ++i) {
    const Form f = i % 2 ? Form::Dual : Form::Primal;
    auto q = random_query(rng, f, mus[i % 3]);
    auto a = witness(q);
    auto b = box_point_search(dani_lattice(q));
    EXPECT_EQ(a.found, b.found) << i;
    if (a.found) EXPECT_TRUE(check_witness(q, a));
    if (b.found) EXPECT_TRUE(check_witness(q, b));
  }
}

TEST(Dirichlet, ExactRationalBoundary) {
  // |2 * 1/4 - 0| = 1/2 equals mu / N exactly; only exact arithmetic decides it.
  auto q = DIQuery::primal_exact({make_rational(1, 4)}, {2}, Rational(1));
  auto w = di_witness(q);
  ASSERT_TRUE(w.found);
  EXPECT_TRUE(check_witness(q, w));
  EXPECT_EQ(box_point_search(dani_lattice(q)).found, true);
}

TEST(Dirichlet, MinkowskiCompleteness) {
  CounterRng rng(77, 2);
  for (int i = 0; i < 500; ++i) {
    auto q = random_query(rng, i % 2 ? Form::Dual : Form::Primal, 1.0);
    EXPECT_TRUE(witness(q).found) << i;
  }
}

TEST(Dirichlet, MuMonotone) {
  CounterRng rng(78, 3);
  for (int i = 0; i < 200; ++i) {
    auto q = random_query(rng, i % 2 ? Form::Dual : Form::Primal, 0.1);
    bool prev = false;
    for (int k = 1; k <= 10; ++k) {
      q.mu = make_rational(k, 10);
      const bool f = witness(q).found;
      if (prev) EXPECT_TRUE(f) << i << " mu=" << k;
      prev = f;
    }
  }
}

TEST(RBar, Examples) {
  std::vector<std::vector<long long>> a, b, c;
  for (int k = 1; k <= 20; ++k) {
    a.push_back({1LL << k, 1LL << k});
    b.push_back({1LL << (2 * k), 1LL << k});
    c.push_back({1LL << k, 1});
  }
  auto r = rbar1(a);
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(*r.exact, make_rational(1, 2));
  r = rbar1(b);
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(*r.exact, make_rational(2, 3));
  r = rbar1(c);
  EXPECT_EQ(*r.exact, Rational(1));
  r = rbar1({{1, 1}, {2, 3}, {5, 5}});
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_GE(r.value, 0.5);
  EXPECT_LE(r.value, 1.0);
  EXPECT_THROW(rbar1({{1, 1}}), std::invalid_argument);
}

TEST(Scan, MuOneAndDeterminism) {
  ScanSpec spec{curvejet::CurveSpec::moment(2), 0, 1, {{2, 2}, {4, 4}, {8, 8}}, Rational(1), 20};
  auto s = curve_scan(spec);
  EXPECT_DOUBLE_EQ(s.fraction_all.back(), 1.0);
  spec.mu = make_rational(3, 10);
  auto a = curve_scan(spec);
  auto b = curve_scan_parallel(spec);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].primal, b.rows[i].primal);
    EXPECT_EQ(a.rows[i].dual, b.rows[i].dual);
  }
  for (size_t l = 1; l < a.fraction_all.size(); ++l) EXPECT_LE(a.fraction_all[l], a.fraction_all[l - 1]);
}

TEST(Scan, RationalPointsAreFlagged) {
  // s = 1/2 puts (1/2, 1/4) on the grid; q = (4, 0) with p = 2 is exact once N_1 >= 4.
  ScanSpec spec{curvejet::CurveSpec::moment(2), 0, 1, {{4, 4}, {8, 8}, {16, 16}}, make_rational(1, 10), 1, 0.5};
  auto s = curve_scan(spec);
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(s.rows[0].s, 0.5);
  EXPECT_TRUE(s.rows[0].rational_exception);
  EXPECT_TRUE(s.rows[0].all_improvable);
}
