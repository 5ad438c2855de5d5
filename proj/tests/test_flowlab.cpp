#include <gtest/gtest.h>

#include <cmath>

#include "horolab/core/rng.hpp"
#include "horolab/flowlab/expansion.hpp"

using namespace horolab;
using namespace horolab::flowlab;
using curvejet::CurveSpec;
using curvejet::ordered_regular_frame;
using weightlab::ModuleVector;
using weightlab::WeightModule;

namespace {

Interval J(long lo, long hi) { return {Rational(lo), Rational(hi)}; }

double d(const HiReal& x) { return x.convert_to<double>(); }

}  // namespace

TEST(Schedule, PresetsSatisfyInvariants) {
  for (auto s : {FlowSchedule::equal(3), FlowSchedule::parse("linear:1.5,0.5", 2), FlowSchedule::sublinear_tail(3)})
    for (double t : {0.0, 0.3, 1.0, 7.0, 20.0}) {
      auto r = s.r(t);
      double sum = 0;
      for (double x : r) sum += x;
      EXPECT_NEAR(sum, s.n() * t, 1e-12 * (1 + t));
      auto xi = xi_coefficients(s, t);
      double xs = 0;
      for (double x : xi) {
        EXPECT_GE(x, -1e-12);
        xs += x;
      }
      EXPECT_NEAR(xs, t, 1e-12 * (1 + t));
      auto h = h_xi(s.n(), xi);
      auto want = s.h_diag(t);
      for (size_t i = 0; i < h.size(); ++i) EXPECT_NEAR(h[i], want[i], 1e-12 * (1 + t));
    }
}

TEST(Schedule, RejectsBadSlopes) {
  EXPECT_THROW(FlowSchedule::linear({0.5, 1.5}), std::invalid_argument);
  EXPECT_THROW(FlowSchedule::linear({1.5, 1.0}), std::invalid_argument);
  EXPECT_THROW(FlowSchedule::parse("linear:2", 2), std::invalid_argument);
  EXPECT_THROW(FlowSchedule::parse("quadratic", 2), std::invalid_argument);
  auto bad = FlowSchedule::custom("bad", 2, [](double t) { return std::vector<double>{0.0, 2 * t}; });
  EXPECT_THROW(bad.r(1.0), std::domain_error);
  EXPECT_THROW(xi_coefficients(bad, 1.0), std::domain_error);
}

TEST(Schedule, XiExamples) {
  auto xi = xi_coefficients(FlowSchedule::linear({1.5, 0.5}), 2.0);
  EXPECT_DOUBLE_EQ(xi[0], 1.0);
  EXPECT_DOUBLE_EQ(xi[1], 1.0);
  auto h = h_xi(2, xi);
  EXPECT_DOUBLE_EQ(h[0], 4);
  EXPECT_DOUBLE_EQ(h[1], -3);
  EXPECT_DOUBLE_EQ(h[2], -1);
  xi = xi_coefficients(FlowSchedule::equal(2), 5.0);
  EXPECT_DOUBLE_EQ(xi[0], 0);
  EXPECT_DOUBLE_EQ(xi[1], 5);
  xi = xi_coefficients(FlowSchedule::linear({3, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(xi[0], 1);
  EXPECT_DOUBLE_EQ(xi[1], 0);
  EXPECT_DOUBLE_EQ(xi[2], 0);
}

TEST(Classify, Examples) {
  auto c = classify(FlowSchedule::equal(2), 40);
  EXPECT_EQ(c.n0, 2);
  EXPECT_TRUE(c.uniform);
  EXPECT_EQ(c.k, 3);

  c = classify(FlowSchedule::linear({2, 0}), 40);
  EXPECT_EQ(c.n0, 1);
  EXPECT_FALSE(c.uniform);
  EXPECT_EQ(c.k, 4);
  EXPECT_EQ(c.r_verdicts[1], Verdict::Zero);

  c = classify(FlowSchedule::linear({1.5, 0.5}), 40);
  EXPECT_EQ(c.n0, 2);
  EXPECT_FALSE(c.uniform);
  EXPECT_EQ(c.k, 4);

  c = classify(FlowSchedule::sublinear_tail(2), 40);
  EXPECT_EQ(c.n0, 2);
  EXPECT_FALSE(c.uniform);
}

TEST(Classify, NonStabilizingIsUndetermined) {
  // r_2 oscillates without settling, so its limit verdict cannot be decided.
  auto s = FlowSchedule::custom("wobble", 2, [](double t) {
    double tail = std::min(t, 1 + std::sin(t));
    return std::vector<double>{2 * t - tail, tail};
  });
  auto c = classify(s, 40);
  EXPECT_FALSE(c.determined);
  EXPECT_EQ(c.n0, 0);
}

TEST(Vandermonde, ClosedFormsAndFrozenInverses) {
  auto c = vandermonde_constant(1, J(1, 2));
  EXPECT_EQ(c.c_certified, make_rational(1, 3));
  EXPECT_EQ(c.c_empirical, make_rational(1, 3));
  EXPECT_TRUE(c.empirical_dominates);
  // f = eta - 1.5: sup on J is 0.5 = (1/3) * 1.5.
  EXPECT_DOUBLE_EQ(0.5, to_double(c.c_certified) * 1.5);

  c = vandermonde_constant(0, J(3, 7));
  EXPECT_EQ(c.c_certified, Rational(1));

  // Row sums and max entries of the exact inverse, frozen from an independent CAS computation.
  struct Row {
    int d;
    long lo, hi;
    Rational row_sum, max_entry, cert;
  };
  for (const auto& r : std::vector<Row>{{2, 1, 2, Rational(24), Rational(12), make_rational(1, 24)},
                                        {3, 1, 2, Rational(236), make_rational(189, 2), make_rational(1, 243)},
                                        {4, 1, 2, make_rational(6784, 3), Rational(844), make_rational(1, 3072)},
                                        {3, 1, 3, make_rational(101, 2), make_rational(333, 16), make_rational(2, 81)}}) {
    c = vandermonde_constant(r.d, J(r.lo, r.hi));
    EXPECT_EQ(c.inverse_row_sum, r.row_sum) << r.d;
    EXPECT_EQ(c.inverse_max_entry, r.max_entry) << r.d;
    EXPECT_EQ(c.c_certified, r.cert) << r.d;
  }
  EXPECT_THROW(vandermonde_constant(2, J(2, 2)), std::invalid_argument);
  EXPECT_THROW(vandermonde_constant(2, J(0, 2)), std::invalid_argument);
}

TEST(Vandermonde, EmpiricalConstantIsALowerBound) {
  // For random polynomials sup_J |f| >= C_empirical max|c|, which follows from c = V^{-1} f(nodes).
  CounterRng rng(17, 3);
  for (int d = 1; d <= 6; ++d) {
    auto c = vandermonde_constant(d, J(1, 2));
    const double ce = to_double(c.c_empirical);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> coef(d + 1);
      double mx = 0;
      for (auto& x : coef) {
        x = rng.uniform(-1, 1);
        mx = std::max(mx, std::fabs(x));
      }
      double sup = 0;
      for (int g = 0; g <= 1000; ++g) {
        double eta = 1 + g / 1000.0, p = 0;
        for (int k = d; k >= 0; --k) p = p * eta + coef[k];
        sup = std::max(sup, std::fabs(p));
      }
      EXPECT_GE(sup, ce * mx * (1 - 1e-12));
    }
  }
}

TEST(Vandermonde, CertifiedFormulaFailsOnWiderInterval) {
  // f = T_3(eta - 2)/45 = (4 eta^3 - 24 eta^2 + 45 eta - 26)/45 on [1,3]:
  // max|c| = 1 while sup|f| = 1/45 < 2/81 = C_certified.
  auto c = vandermonde_constant(3, J(1, 3));
  const double coef[] = {-26 / 45.0, 1.0, -24 / 45.0, 4 / 45.0};
  double sup = 0;
  for (int g = 0; g <= 20000; ++g) {
    double eta = 1 + 2.0 * g / 20000, p = 0;
    for (int k = 3; k >= 0; --k) p = p * eta + coef[k];
    sup = std::max(sup, std::fabs(p));
  }
  EXPECT_NEAR(sup, 1 / 45.0, 1e-12);
  EXPECT_LT(sup, to_double(c.c_certified));
  EXPECT_GE(sup, to_double(c.c_empirical));
  EXPECT_FALSE(c.empirical_dominates);
  EXPECT_EQ(c.c_used(), c.c_empirical);
}

TEST(Expansion, StandardN1ClosedForm) {
  auto m = WeightModule::build("standard", 1);
  auto frame = ordered_regular_frame(CurveSpec::moment(1), 0.5, 1);
  for (double t : {3.0, 6.0, 12.0}) {
    auto r = expansion_supremum(ModuleVector::basis(m, 1), FlowSchedule::equal(1), frame, t, {}, J(1, 2), 16);
    EXPECT_NEAR(r.m_t, 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.eta_argmax, 2.0);
    EXPECT_GE(r.m_upper, r.m_t);
  }
  auto z = expansion_supremum(ModuleVector::zero(m), FlowSchedule::equal(1), frame, 5, {}, J(1, 2), 16);
  EXPECT_EQ(z.m_t, 0.0);
}

TEST(Expansion, FixedVersusNonFixed) {
  auto m = WeightModule::build("exterior(1)", 2);
  auto frame = ordered_regular_frame(CurveSpec::moment(2), 0.3, 4);
  auto s = FlowSchedule::linear({1.5, 0.5});
  for (double t : {4.0, 8.0}) {
    auto e2 = expansion_supremum(ModuleVector::basis(m, 2), s, frame, t, {}, J(1, 2), 16);
    EXPECT_NEAR(e2.m_t, 4.0, 1e-9);
    auto e0 = expansion_supremum(ModuleVector::basis(m, 0), s, frame, t, {}, J(1, 2), 16);
    EXPECT_NEAR(e0.m_t / std::exp(2 * t), 1.0, 1e-12);
  }
  EXPECT_THROW(expansion_supremum(ModuleVector::basis(m, 2), s, frame, 4, Alpha{1.0}, J(1, 2), 16),
               std::invalid_argument);
}

TEST(Expansion, MatchesDirectMatrixProduct) {
  // Oracle: a_t rho(u(x)) v built from the double-precision group element directly.
  auto m = WeightModule::build("exterior(2)", 2);
  auto frame = ordered_regular_frame(CurveSpec::sin_square(), 0.4, 4);
  auto s = FlowSchedule::linear({1.5, 0.5});
  CounterRng rng(5, 1);
  std::vector<Rational> c;
  for (int i = 0; i < m->dimension(); ++i) c.push_back(rng.rational(5, 7));
  ModuleVector v(m, c);
  const double t = 3;
  auto r = expansion_supremum(v, s, frame, t, {}, J(1, 2), 8);
  double best = 0;
  for (double eta : eta_grid(J(1, 2), std::max(8, 4 * (weight_gap_degree(m) + 1)), r.degree)) {
    auto x = frame.taylor_poly(HiReal(std::exp(-t) * eta));
    std::vector<double> xd;
    for (auto& e : x) xd.push_back(d(e));
    auto g = group::a_t(t, s.r(t)) * group::u<double>(xd);
    auto w = m->rho(g) * convert<double>(c);
    best = std::max(best, sup_norm(w));
  }
  EXPECT_NEAR(r.m_t, best, 1e-9 * best);
}

TEST(Expansion, CertifiedBoundHolds) {
  auto m = WeightModule::build("exterior(1)", 2);
  auto frame = ordered_regular_frame(CurveSpec::moment(2), 0.3, 4);
  auto cert = certify_d2(m, frame, J(1, 2), 20);
  EXPECT_EQ(cert.d, 2);
  EXPECT_GT(cert.d2, 0);
  CounterRng rng(9, 2);
  std::vector<ModuleVector> vs;
  for (int k = 0; k < 10; ++k) {
    std::vector<Rational> c;
    for (int i = 0; i < 3; ++i) c.push_back(rng.rational(9, 9));
    c[k % 3] = Rational(1);
    vs.emplace_back(m, c);
  }
  for (auto& r : expansion_supremum_batch(vs, FlowSchedule::linear({1.5, 0.5}), frame, 10, {}, J(1, 2), 16))
    EXPECT_GE(r.m_t, cert.d2);
}

TEST(Growth, WitnessesAgreeWithFixedCheck) {
  auto frame = ordered_regular_frame(CurveSpec::moment(2), 0.3, 4);
  auto s = FlowSchedule::linear({1.5, 0.5});
  std::vector<double> ladder{2, 4, 6, 8, 10, 12};
  auto std2 = WeightModule::build("standard", 2);
  auto g = growth_witness(ModuleVector::basis(std2, 2), s, frame, J(1, 2), ladder);
  EXPECT_EQ(g.verdict, Verdict::Bounded);
  EXPECT_TRUE(g.fixed);
  EXPECT_TRUE(g.agrees);
  g = growth_witness(ModuleVector::basis(std2, 0), s, frame, J(1, 2), ladder);
  EXPECT_EQ(g.verdict, Verdict::Divergent);
  EXPECT_NEAR(g.rate, 2.0, 1e-6);
  EXPECT_TRUE(g.agrees);
  // Slow shrinking tests G_{n0} = G: e_2 is not G-fixed and grows like alpha_t^2.
  g = growth_witness(ModuleVector::basis(std2, 2), s, frame, J(1, 2), ladder, Alpha{0.5});
  EXPECT_EQ(g.verdict, Verdict::Divergent);
  EXPECT_FALSE(g.fixed);
  EXPECT_TRUE(g.agrees);
  auto det = WeightModule::build("exterior(3)", 2);
  g = growth_witness(ModuleVector::basis(det, 0), s, frame, J(1, 2), ladder, Alpha{0.5});
  EXPECT_EQ(g.verdict, Verdict::Bounded);
  EXPECT_TRUE(g.agrees);
  g = growth_witness(ModuleVector::basis(std2, 2), s, frame, J(1, 2), {5, 10, 15});
  EXPECT_EQ(g.verdict, Verdict::Undetermined);
  EXPECT_FALSE(g.agrees);
}

TEST(QFixed, ClosedFormAndLimit) {
  auto w = qfixed_limit_vector(2, 2, 1, 2);
  EXPECT_EQ(d(w[0]), 4.0);
  EXPECT_EQ(d(w[1]), 0.0);
  EXPECT_EQ(d(w[2]), 0.0);
  w = qfixed_limit_vector(3, 3, 1, 1);
  EXPECT_EQ(d(w[0]), 1.0);

  auto frame = ordered_regular_frame(CurveSpec::moment(2), 0.3, 4);
  auto q = qfixed_limit(frame, FlowSchedule::linear({1.5, 0.5}), 2, 2.0, 10);
  EXPECT_NEAR(q.residual, std::exp(-5.0), 1e-12);
  q = qfixed_limit(frame, FlowSchedule::linear({1.2, 0.8}), 2, 2.0, 20);
  EXPECT_LT(q.residual, 1e-6);
  q = qfixed_limit(frame, FlowSchedule::linear({2, 0}), 1, 1.5, 20);
  EXPECT_LT(q.residual, 1e-12);
  EXPECT_NEAR(d(q.limit[0]), 2.25, 1e-15);
  EXPECT_EQ(d(q.limit[2]), 1.0);
}

TEST(QFixed, NonPolynomialFrameConverges) {
  auto frame = ordered_regular_frame(CurveSpec::sin_square(), 0.3, 4);
  auto s = FlowSchedule::linear({1.2, 0.8});
  double prev = 1e300;
  for (double t : {5.0, 10.0, 15.0, 20.0}) {
    auto q = qfixed_limit(frame, s, 2, 1.5, t);
    EXPECT_LT(q.residual, prev);
    prev = q.residual;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(ApproxResidual, ExactAndTrivialCases) {
  auto r = approx_residual(CurveSpec::moment(2), 0.4, FlowSchedule::equal(2), 2, 6, 1.5);
  EXPECT_EQ(r.residual, 0.0);
  r = approx_residual(CurveSpec::sin_square(), 0.3, FlowSchedule::linear({1.5, 0.5}), 4, 0, 0);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_THROW(approx_residual(CurveSpec::sin_square(), 0.3, FlowSchedule::linear({1.5, 0.5}), 3, 5, 1),
               std::invalid_argument);
}

TEST(ApproxResidual, DecaysFasterThanTrend) {
  auto s = FlowSchedule::linear({1.5, 0.5});
  const int k = 4, n = 2;
  std::vector<double> ts{5, 8, 11}, res;
  for (double t : ts) res.push_back(approx_residual(CurveSpec::sin_square(), 0.3, s, k, t, 1.5).residual);
  for (size_t i = 1; i < ts.size(); ++i) {
    auto g = [&](double t) { return k * t - n * t - s.r(t)[0]; };
    EXPECT_LE(res[i] / res[i - 1], std::exp(-(g(ts[i]) - g(ts[i - 1]))));
  }
}

TEST(ApproxResidual, MatchesExplicitMatrices) {
  // Oracle: build every factor as a HiReal matrix and take the operator norm directly.
  auto curve = CurveSpec::sin_square();
  auto s = FlowSchedule::linear({1.5, 0.5});
  const double t = 4, eta = 1.2, s0 = 0.3;
  auto frame = ordered_regular_frame(curve, s0, 4);
  const HiReal h = exp(HiReal(-t)) * eta;
  auto r = s.r(t);
  std::vector<HiReal> ad{exp(HiReal(2 * t))};
  for (double x : r) ad.push_back(exp(HiReal(-x)));
  auto at = Matrix<HiReal>::diagonal(ad);
  auto at_inv = inverse(at);
  Matrix<HiReal> v = Matrix<HiReal>::identity(3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v(i + 1, j + 1) = frame.b(i, j);
  auto vt = at * v * at_inv;
  auto phi0 = curve.eval(HiReal(s0));
  auto phih = curve.eval(HiReal(s0) + h);
  auto bracket = inverse(vt) * at * group::u<HiReal>(frame.taylor_poly(h)) * v * group::u<HiReal>(phi0);
  auto diff = at * group::u<HiReal>(phih) * inverse(bracket) - Matrix<HiReal>::identity(3);
  const double want = d(sup_operator_norm(diff));
  auto got = approx_residual(curve, s0, s, 4, t, eta);
  EXPECT_NEAR(got.residual, want, 1e-20 + 1e-8 * want);
}
