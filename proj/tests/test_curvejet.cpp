#include <gtest/gtest.h>

#include <cmath>

#include "horolab/curvejet/frame.hpp"

using namespace horolab;
using namespace horolab::curvejet;

namespace {

double d(const HiReal& x) { return x.convert_to<double>(); }

double sup(const std::vector<HiReal>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::fabs(d(x)));
  return m;
}

}  // namespace

TEST(Jet, MomentCurveSymbolic) {
  auto c = CurveSpec::moment(3);
  auto j = jet(c, 2.0, 3);
  ASSERT_TRUE(j.exact);
  EXPECT_EQ(j.exact_d[0], (std::vector<Rational>{1, 4, 12}));
  EXPECT_EQ(j.exact_d[1], (std::vector<Rational>{0, 2, 12}));
  EXPECT_EQ(j.exact_d[2], (std::vector<Rational>{0, 0, 6}));
}

TEST(Jet, ConstantCurve) {
  auto c = CurveSpec::parse("poly:5;-2");
  auto j = jet(c, 0.3, 4);
  for (const auto& row : j.d) EXPECT_EQ(sup(row), 0.0);
}

TEST(Jet, TrigFiniteDifferences) {
  auto j = jet(CurveSpec::trig(), 0.0, 2);
  ASSERT_FALSE(j.exact);
  EXPECT_NEAR(d(j.d[0][0]), 1.0, 1e-8);
  EXPECT_NEAR(d(j.d[0][1]), 0.0, 1e-8);
  EXPECT_NEAR(d(j.d[1][0]), 0.0, 1e-8);
  EXPECT_NEAR(d(j.d[1][1]), -1.0, 1e-8);
  for (double e : j.error) EXPECT_LT(e, 1e-8);
}

TEST(Jet, HigherOrdersAgainstAnalytic) {
  const double s = 0.7;
  auto j = jet(CurveSpec::sin_square(), s, 8);
  const double derivs[4] = {std::cos(s), -std::sin(s), -std::cos(s), std::sin(s)};
  for (int m = 1; m <= 8; ++m) {
    EXPECT_NEAR(d(j.d[m - 1][0]), derivs[(m - 1) % 4], 1e-9) << "order " << m;
    EXPECT_NEAR(d(j.d[m - 1][1]), m == 1 ? 2 * s : m == 2 ? 2.0 : 0.0, 1e-9) << "order " << m;
  }
}

TEST(Jet, Errors) {
  EXPECT_THROW(jet(CurveSpec::trig(), 2e6, 1), std::invalid_argument);
  auto t = CurveSpec::tabulated({0, 0.5, 1}, {{0}, {0.25}, {1}}, 2);
  EXPECT_THROW(jet(t, 0.5, 3), std::invalid_argument);
}

TEST(Jet, TabulatedQuadraticIsReproduced) {
  std::vector<double> s, v;
  std::vector<std::vector<double>> vals;
  for (int i = 0; i <= 20; ++i) {
    s.push_back(i / 20.0);
    vals.push_back({s.back() * s.back()});
  }
  auto c = CurveSpec::tabulated(s, vals, 2);
  auto j = jet(c, 0.52, 2);
  EXPECT_NEAR(d(j.d[0][0]), 1.04, 1e-9);
  EXPECT_NEAR(d(j.d[1][0]), 2.0, 1e-6);
}

TEST(Frame, MomentCurveIsUnipotent) {
  for (double s : {0.0, 0.25, -1.5, 3.0}) {
    auto f = ordered_regular_frame(CurveSpec::moment(3), s, 3);
    ASSERT_TRUE(f.ordered_regular);
    ASSERT_TRUE(f.exact_frame);
    for (const auto& k : f.exact_frame->kappa) EXPECT_EQ(k, 1);
    EXPECT_EQ(f.exact_frame->b, f.exact_frame->m);
    // Entries C(j,i) s^{j-i}.
    const Rational sr = from_double(s);
    EXPECT_EQ(f.exact_frame->m(0, 2), 3 * sr * sr);
    EXPECT_EQ(f.exact_frame->m(1, 2), 3 * sr);
  }
  auto f0 = ordered_regular_frame(CurveSpec::moment(2), 0.0, 2);
  EXPECT_EQ(f0.exact_frame->b, Matrix<Rational>::identity(2));
}

TEST(Frame, DegenerateAtIndexOne) {
  auto f = ordered_regular_frame(CurveSpec::parse("poly:0,0,1;0,1"), 0.0, 2);
  EXPECT_FALSE(f.ordered_regular);
  EXPECT_EQ(f.failing_index, 1);
}

TEST(Frame, LowerTriangularIdentityNumeric) {
  auto f = ordered_regular_frame(CurveSpec::sin_square(), 0.3, 4);
  ASSERT_TRUE(f.ordered_regular);
  auto mb = f.m * inverse(f.b);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(d(mb(i, i) - f.kappa[i]), 0.0, 1e-9 * std::fabs(d(f.kappa[i])));
    for (int j = i + 1; j < 2; ++j) EXPECT_NEAR(d(mb(i, j)), 0.0, 1e-9);
  }
}

TEST(Frame, ReflectedTableAlternatesSign) {
  auto f = ordered_regular_frame(CurveSpec::sin_square(), 0.3, 4);
  const HiReal h = 0.01;
  auto r = f.taylor_poly(-h);
  std::vector<HiReal> rt(2, HiReal(0));
  HiReal hp = 1;
  for (size_t j = 1; j < f.coeff_tilde.size(); ++j) {
    hp *= h;
    for (int i = 1; i <= 2; ++i)
      if (static_cast<int>(j) >= i) rt[i - 1] += f.coeff_tilde[j][i - 1] * hp;
  }
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(d(r[i] - rt[i]), 0.0, 1e-30);
}

TEST(Remainder, MomentCurveExactZero) {
  for (double s : {0.1, 0.5, -2.0})
    for (double h : {0.0, 0.25, -0.125, 3.0}) EXPECT_EQ(sup(taylor_frame_remainder(CurveSpec::moment(2), s, 2, h)), 0.0);
}

TEST(Remainder, DecaysFasterThanHk) {
  auto c = CurveSpec::sin_square();
  auto f = ordered_regular_frame(c, 0.0, 4);
  ASSERT_TRUE(f.ordered_regular);
  double prev = 1e300;
  std::vector<double> lh, lr;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    const double ratio = sup(taylor_frame_remainder(c, f, h)) / std::pow(h, 4);
    EXPECT_LT(ratio, prev);
    prev = ratio;
    lh.push_back(std::log(h));
    lr.push_back(std::log(sup(taylor_frame_remainder(c, f, h))));
  }
  const double slope = (lr.back() - lr.front()) / (lh.back() - lh.front());
  EXPECT_GE(slope, 4 - 0.1);
}

TEST(Wedge, SmallCases) {
  EXPECT_EQ(wedge_expand(2, 0), (std::vector<WedgeTerm>{{{1, 2}, 1}}));
  EXPECT_EQ(wedge_expand(2, 1), (std::vector<WedgeTerm>{{{1, 3}, 1}}));
  EXPECT_EQ(wedge_expand(2, 2), (std::vector<WedgeTerm>{{{1, 4}, 1}, {{2, 3}, 1}}));
}

TEST(Wedge, DegreeAndPositivity) {
  for (int n = 1; n <= 4; ++n)
    for (int m = 0; m <= 6; ++m)
      for (const auto& t : wedge_expand(n, m)) {
        int sum = 0;
        for (int k = 0; k < n; ++k) sum += t.j[k] - (k + 1);
        EXPECT_EQ(sum, m);
        EXPECT_GT(t.c, 0);
        EXPECT_TRUE(std::is_sorted(t.j.begin(), t.j.end()));
      }
}

namespace {

HiReal det(std::vector<std::vector<HiReal>> a) {
  const int n = static_cast<int>(a.size());
  Matrix<HiReal> m(n, n);
  for (int i = 0; i < n; ++i) m.set_row(i, a[i]);
  return determinant(m);
}

}  // namespace

TEST(Wedge, MatchesDirectDifferentiation) {
  // psi = det(phi', ..., phi^{(n)}) differentiated numerically versus the expansion.
  const std::vector<CurveSpec> curves = {CurveSpec::moment(2), CurveSpec::moment(3),
                                         CurveSpec::parse("poly:0,1,0,1;0,0,1,0,0,1;0,0,0,0,1")};
  for (const auto& c : curves) {
    const int n = c.n();
    const double s0 = 0.4;
    auto psi_curve = CurveSpec::callback(
        "psi", 1,
        [&c, n](const HiReal& s) {
          // Derivative polynomials evaluated directly at the HiReal point.
          std::vector<std::vector<HiReal>> rows;
          for (int i = 1; i <= n; ++i) {
            rows.emplace_back();
            for (const auto& comp : c.coefficients()) {
              HiReal acc = 0;
              for (long p = static_cast<long>(comp.size()) - 1; p >= i; --p) {
                HiReal fall = 1;
                for (int q = 0; q < i; ++q) fall *= (p - q);
                acc = acc * s + scalar_cast<HiReal>(comp[p]) * fall;
              }
              rows.back().push_back(acc);
            }
          }
          return std::vector<HiReal>{det(rows)};
        },
        -10, 10, 64);
    auto direct = jet(psi_curve, s0, 4);
    auto derivs = jet(c, s0, n + 4);
    for (int m = 1; m <= 4; ++m) {
      HiReal sum = 0;
      for (const auto& t : wedge_expand(n, m)) {
        std::vector<std::vector<HiReal>> rows;
        for (int q : t.j) rows.push_back(derivs.d[q - 1]);
        sum += HiReal(t.c) * det(rows);
      }
      const double want = d(direct.d[m - 1][0]);
      EXPECT_NEAR(d(sum), want, 1e-8 * std::max(1.0, std::fabs(want))) << c.name() << " m=" << m;
    }
  }
}

TEST(Scan, MomentCurveHasNoFailures) {
  auto rep = regularity_scan(CurveSpec::moment(2), 0.0, 1.0, 1000);
  EXPECT_EQ(rep.grid.size(), 999u);
  EXPECT_TRUE(rep.failures.empty());
}

TEST(Scan, DegenerateCurveClusterAtZero) {
  auto rep = regularity_scan(CurveSpec::parse("poly:0,0,1;0,1"), -1.0, 1.0, 1000);
  ASSERT_EQ(rep.clusters.size(), 1u);
  EXPECT_LE(rep.clusters[0].first, 0.0);
  EXPECT_GE(rep.clusters[0].second, 0.0);
  for (double s : rep.failures) EXPECT_LT(std::fabs(s), 0.01);
}

TEST(Scan, MonotoneScalarCurve) {
  auto c = CurveSpec::callback(
      "exp", 1, [](const HiReal& s) { return std::vector<HiReal>{exp(s)}; }, -5, 5, 64);
  EXPECT_TRUE(regularity_scan(c, 0.0, 1.0, 200).failures.empty());
}
