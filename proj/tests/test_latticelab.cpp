#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "horolab/core/rng.hpp"
#include "horolab/latticelab/sampling.hpp"

using namespace horolab;
using namespace horolab::latticelab;

namespace {

/// Brute force over the coefficient box implied by Cramer's rule: a vector of length <= R
/// has coefficients |c_i| <= R * ||column i of B^{-1}||.
double brute_systole(const Matrix<double>& b) {
  const int n = b.rows();
  double r = 1e300;
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += b(i, j) * b(i, j);
    r = std::min(r, std::sqrt(s));
  }
  const auto inv = inverse(b);
  std::vector<long long> box(n);
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += inv(j, i) * inv(j, i);
    box[i] = static_cast<long long>(std::floor(r * std::sqrt(s) + 1e-9));
  }
  double best = 1e300;
  std::vector<long long> c(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      bool nz = false;
      std::vector<double> v(n, 0.0);
      for (int k = 0; k < n; ++k) {
        nz = nz || c[k] != 0;
        for (int j = 0; j < n; ++j) v[j] += c[k] * b(k, j);
      }
      if (!nz) return;
      double s = 0;
      for (double x : v) s += x * x;
      best = std::min(best, std::sqrt(s));
      return;
    }
    for (c[i] = -box[i]; c[i] <= box[i]; ++c[i]) rec(i + 1);
  };
  rec(0);
  return best;
}

LatticeBasis random_basis(CounterRng& rng, int dim) {
  Matrix<double> m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rng.uniform(-2, 2);
  return LatticeBasis::unimodularize(m, "random");
}

TranslateJob job_for(const LatticeBasis& base, double t, int n_samples, std::uint64_t seed) {
  return {curvejet::CurveSpec::moment(1), flowlab::FlowSchedule::equal(1), base, Sampler::parse("uniform:0,1"),
          Observable{}, t, n_samples, seed};
}

}  // namespace

TEST(Lattice, IdentityIsReduced) {
  auto r = lll_reduce(LatticeBasis::standard(3));
  EXPECT_EQ(r.basis.rows, Matrix<double>::identity(3));
  EXPECT_EQ(r.swaps, 0);
  EXPECT_DOUBLE_EQ(systole(LatticeBasis::standard(4)), 1.0);
}

TEST(Lattice, FindsHiddenShortVector) {
  // The lattice spanned by (1,0) and (0.999,0.001), rescaled to covolume 1.
  auto b = LatticeBasis::unimodularize(Matrix<double>(2, 2, {1, 0, 0.999, 0.001}), "skew");
  auto r = lll_reduce(b);
  const double brute = brute_systole(b.rows);
  EXPECT_NEAR(systole(b), brute, 1e-9);
  double first = std::hypot(r.basis.rows(0, 0), r.basis.rows(0, 1));
  EXPECT_LE(first, std::sqrt(2.0) * brute * (1 + 1e-12));
  // Reduced rows = U * original rows with U integral and unimodular.
  auto prod = r.transform * b.rows;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(prod(i, j), r.basis.rows(i, j), 1e-9);
      EXPECT_EQ(r.transform(i, j), std::round(r.transform(i, j)));
    }
  EXPECT_NEAR(std::fabs(determinant(r.transform)), 1.0, 1e-12);
}

TEST(Lattice, DiagonalCase) {
  // diag(e^{-1}, e) with rows swapped; one sign flip keeps det = +1.
  auto b = LatticeBasis::from_rows(Matrix<double>(2, 2, {0, -std::exp(1.0), std::exp(-1.0), 0}), "diag");
  auto r = lll_reduce(b);
  EXPECT_NEAR(std::hypot(r.basis.rows(0, 0), r.basis.rows(0, 1)), std::exp(-1.0), 1e-15);
}

TEST(Lattice, SystoleExamples) {
  auto z2 = LatticeBasis::standard(2);
  Matrix<double> a(2, 2, {std::exp(1.0), 0, 0, std::exp(-1.0)});
  EXPECT_NEAR(systole(z2.translated(a, "a_1")), std::exp(-1.0), 1e-15);
  const double t = 3, eta = 1.7;
  Matrix<double> g(2, 2, {std::exp(t), eta * std::exp(-t), 0, std::exp(-t)});
  auto l = z2.translated(g, "u a_t");
  EXPECT_NEAR(systole(l), std::exp(-t) * std::sqrt(1 + eta * eta), 1e-15);
  EXPECT_NEAR(systole(l), brute_systole(l.rows), 1e-12);
}

TEST(Lattice, RandomBasesMatchBruteForce) {
  CounterRng rng(2024, 7);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = 2 + trial % 3;
    auto b = random_basis(rng, dim);
    EXPECT_NEAR(b.det(), 1.0, 1e-9);
    auto r = lll_reduce(b);
    EXPECT_NEAR(std::fabs(r.basis.det()), 1.0, 1e-9);
    // The brute-force box is taken on the reduced rows, which span the same lattice
    // (the transform is checked to be integral and unimodular).
    for (auto x : r.transform.data()) ASSERT_EQ(x, std::round(x));
    ASSERT_NEAR(std::fabs(determinant(r.transform)), 1.0, 1e-9);
    EXPECT_NEAR(systole(b), brute_systole(r.basis.rows), 1e-9) << trial;
  }
}

TEST(Lattice, RejectsBadInput) {
  EXPECT_THROW(LatticeBasis::from_rows(Matrix<double>(2, 2, {2, 0, 0, 1}), "x"), std::invalid_argument);
  EXPECT_THROW(lll_reduce(LatticeBasis::standard(2), 0.2), std::invalid_argument);
  EXPECT_THROW(catalog_basis("nope", 2), std::invalid_argument);
  for (const auto& name : catalog_names())
    for (int d = 2; d <= 4; ++d) EXPECT_NEAR(catalog_basis(name, d).det(), 1.0, 1e-9);
}

TEST(Measure, KolmogorovSmirnov) {
  auto a = EmpiricalMeasure::from_values("x", {1, 2, 3});
  EXPECT_EQ(consistency_distance(a, a), 0.0);
  auto b = EmpiricalMeasure::from_values("x", {4, 5});
  EXPECT_EQ(consistency_distance(a, b), 1.0);
  auto c = EmpiricalMeasure::from_values("x", {1.5, 2.5, 3.5, 4.5});
  // Oracle by hand: at x=3 the CDFs are 1 and 1/2.
  EXPECT_DOUBLE_EQ(consistency_distance(a, c), 0.5);
  EXPECT_THROW(consistency_distance(a, EmpiricalMeasure::from_values("y", {1})), std::invalid_argument);
  EXPECT_THROW(consistency_distance(a, EmpiricalMeasure::from_values("x", {})), std::invalid_argument);

  double mass = 0;
  for (double m : a.masses) mass += m;
  EXPECT_NEAR(mass, 1.0, 1e-15);
  EXPECT_THROW(EmpiricalMeasure::from_values("x", {NAN}), std::domain_error);
}

TEST(Measure, SameGeneratorDifferentSeeds) {
  // Uniform draws: the KS null 99% quantile at N=1e4 is about 0.023.
  std::vector<double> x, y;
  for (int i = 0; i < 10000; ++i) {
    x.push_back(counter_uniform(1, 0, i));
    y.push_back(counter_uniform(2, 0, i));
  }
  EXPECT_LT(consistency_distance(EmpiricalMeasure::from_values("u", x), EmpiricalMeasure::from_values("u", y)), 0.03);
}

TEST(Translate, DeterministicAndParallelEqual) {
  auto job = job_for(LatticeBasis::standard(2), 0, 1000, 42);
  auto a = translate_sample(job);
  auto b = translate_sample(job);
  auto c = translate_sample_parallel(job);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.values, c.values);
  EXPECT_EQ(a.mean(), c.mean());
  // u(s)Z^2 contains (1,0), so every systole is at most 1.
  EXPECT_LE(a.values.back(), 1.0 + 1e-12);
  EXPECT_GT(a.values.front(), 0.0);
}

TEST(Translate, ObservablesAndSamplers) {
  EXPECT_DOUBLE_EQ(Observable::parse("inv-systole:5")(0.1), 5.0);
  EXPECT_DOUBLE_EQ(Observable::parse("indicator:0.5")(0.7), 1.0);
  EXPECT_EQ(Observable::parse("indicator:0.5").name(), "indicator:0.5");
  EXPECT_THROW(Observable::parse("length"), std::invalid_argument);
  auto s = Sampler::parse("eta:0.3:1,2");
  const double p = s.point(4, 1, 0);
  EXPECT_GE(p, 0.3 + std::exp(-4.0));
  EXPECT_LE(p, 0.3 + 2 * std::exp(-4.0));
  EXPECT_THROW(Sampler::parse("eta-beta:0:1,2:1.5"), std::invalid_argument);
  EXPECT_EQ(Sampler::parse("uniform:0,1").name(), "uniform:0,1");
}

TEST(Translate, EtaModeMatchesClosedForm) {
  // n=1, phi(s)=s, s0=0, eta-mode: a_t u(e^{-t} eta) Z^2 = u(e^t eta) a_t Z^2, whose systole is
  // bounded below, so the sample stays away from the cusp.
  TranslateJob job = job_for(LatticeBasis::standard(2), 6, 200, 3);
  job.sampler = Sampler::parse("eta:0:1,2");
  auto m = translate_sample(job);
  EXPECT_GT(m.values.front(), 0.3);
}

TEST(Escape, FastRateMatchesClosedForm) {
  // At t = 0 and eta = 1 the vector (1,0) is shorter than the closed form, so the ladder starts at 1.
  auto rows = escape_probe({1, 2, 5, 10, 15, 20}, 1.0, "fast");
  for (const auto& r : rows) EXPECT_LT(r.rel_error, 1e-12) << r.t;
  EXPECT_NEAR(rows[2].systole, std::exp(-5.0) * std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(escape_probe({0}, 0.0, "fast")[0].systole, 1.0);
  for (const auto& r : escape_probe({0, 5, 10, 15, 20}, 1.0, "critical")) EXPECT_GT(r.systole, 0.1);
  EXPECT_THROW(escape_probe({1}, 1, "slow"), std::invalid_argument);
}

TEST(Equidistribution, CatalogBasesAgree) {
  auto a = translate_sample_parallel(job_for(catalog_basis("hex", 2), 8, 4000, 11));
  auto b = translate_sample_parallel(job_for(catalog_basis("shear", 2), 8, 4000, 12));
  EXPECT_LT(consistency_distance(a, b), 0.05);
  auto o = unipotent_orbit_oracle(catalog_basis("golden", 2), std::exp(16.0), 4000, Observable{});
  EXPECT_LT(consistency_distance(a, o), 0.07);
}
