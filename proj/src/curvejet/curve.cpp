#include "horolab/curvejet/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace horolab::curvejet {

namespace {

constexpr int kRichardsonLevels = 6;

Rational falling(long p, int order) {
  Rational r = 1;
  for (int q = 0; q < order; ++q) r *= p - q;
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

CurveSpec CurveSpec::moment(int n) {
  if (n < 1) throw std::invalid_argument("moment curve: n must be >= 1");
  std::vector<std::vector<Rational>> c(n);
  for (int i = 0; i < n; ++i) {
    c[i].assign(i + 2, Rational(0));
    c[i][i + 1] = 1;
  }
  return polynomial(std::move(c), n == 2 ? "moment" : "moment:" + std::to_string(n));
}

CurveSpec CurveSpec::trig() {
  return callback(
      "trig", 2, [](const HiReal& s) { return std::vector<HiReal>{sin(s), cos(s)}; }, -1e6, 1e6, 64);
}

CurveSpec CurveSpec::sin_square() {
  return callback(
      "sin-square", 2, [](const HiReal& s) { return std::vector<HiReal>{sin(s), s * s}; }, -1e6, 1e6, 64);
}

CurveSpec CurveSpec::polynomial(std::vector<std::vector<Rational>> coeffs, std::string name) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial curve: no components");
  CurveSpec c;
  c.name_ = std::move(name);
  c.n_ = static_cast<int>(coeffs.size());
  for (auto& comp : coeffs) {
    if (comp.empty()) comp.push_back(0);
    for (auto& x : comp) x.canonicalize();
  }
  c.poly_ = std::move(coeffs);
  return c;
}

CurveSpec CurveSpec::tabulated(std::vector<double> s, std::vector<std::vector<double>> values, int degree) {
  if (s.size() < 2 || values.size() != s.size()) throw std::invalid_argument("tabulated curve: sample size mismatch");
  if (degree < 1 || degree + 1 > static_cast<int>(s.size()))
    throw std::invalid_argument("tabulated curve: degree must lie in 1..samples-1");
  if (!std::is_sorted(s.begin(), s.end())) throw std::invalid_argument("tabulated curve: nodes must be increasing");
  const int n = static_cast<int>(values[0].size());
  for (const auto& v : values)
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("tabulated curve: ragged samples");
  const double lo = s.front(), hi = s.back();
  auto f = [s = std::move(s), values = std::move(values), degree, n](const HiReal& x) {
    const double xd = x.convert_to<double>();
    auto it = std::lower_bound(s.begin(), s.end(), xd);
    long center = it - s.begin();
    long start = std::clamp(center - (degree + 1) / 2, 0L, static_cast<long>(s.size()) - degree - 1);
    std::vector<HiReal> out(n, HiReal(0));
    for (long a = start; a <= start + degree; ++a) {
      HiReal basis = 1;
      for (long b = start; b <= start + degree; ++b)
        if (b != a) basis *= (x - s[b]) / (HiReal(s[a]) - s[b]);
      for (int c = 0; c < n; ++c) out[c] += basis * values[a][c];
    }
    return out;
  };
  CurveSpec c = callback("tabulated", n, std::move(f), lo, hi, degree);
  return c;
}

CurveSpec CurveSpec::callback(std::string name, int n, Callback f, double lo, double hi, int smoothness) {
  if (n < 1) throw std::invalid_argument("curve: dimension must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("curve: empty domain");
  CurveSpec c;
  c.name_ = std::move(name);
  c.n_ = n;
  c.f_ = std::move(f);
  c.lo_ = lo;
  c.hi_ = hi;
  c.smoothness_ = smoothness;
  return c;
}

CurveSpec CurveSpec::parse(const std::string& preset) {
  if (preset == "moment") return moment(2);
  if (preset.rfind("moment:", 0) == 0) return moment(std::stoi(preset.substr(7)));
  if (preset == "trig") return trig();
  if (preset == "sin-square") return sin_square();
  if (preset.rfind("poly:", 0) == 0) {
    std::vector<std::vector<Rational>> coeffs;
    for (const auto& comp : split(preset.substr(5), ';')) coeffs.push_back(parse_rational_list(comp));
    return polynomial(std::move(coeffs), preset);
  }
  throw std::invalid_argument("unknown curve preset '" + preset + "'");
}

std::vector<HiReal> CurveSpec::eval(const HiReal& s) const {
  if (poly_) {
    std::vector<HiReal> out;
    for (const auto& comp : *poly_) {
      HiReal acc = 0;
      for (auto it = comp.rbegin(); it != comp.rend(); ++it) acc = acc * s + scalar_cast<HiReal>(*it);
      out.push_back(acc);
    }
    return out;
  }
  auto out = f_(s);
  for (const auto& x : out)
    if (!boost::multiprecision::isfinite(x)) throw std::domain_error("curve '" + name_ + "': non-finite evaluation");
  return out;
}

std::vector<double> CurveSpec::eval(double s) const { return convert<double>(eval(HiReal(s))); }

std::vector<Rational> CurveSpec::eval_exact(const Rational& s) const { return derivative_exact(s, 0); }

std::vector<Rational> CurveSpec::derivative_exact(const Rational& s, int order) const {
  if (!poly_) throw std::logic_error("curve '" + name_ + "' has no exact coefficient table");
  std::vector<Rational> out;
  for (const auto& comp : *poly_) {
    Rational acc = 0;
    for (long p = static_cast<long>(comp.size()) - 1; p >= order; --p) acc = acc * s + comp[p] * falling(p, order);
    out.push_back(acc);
  }
  return out;
}

namespace {

/// Central difference of order m at step h: sum_j (-1)^j C(m,j) f(s + (m/2 - j)h) / h^m.
std::vector<HiReal> central_difference(const CurveSpec& c, const HiReal& s, int m, const HiReal& h) {
  std::vector<HiReal> acc(c.n(), HiReal(0));
  HiReal binom = 1;
  for (int j = 0; j <= m; ++j) {
    const HiReal offset = (HiReal(m) / 2 - j) * h;
    const auto f = c.eval(s + offset);
    const HiReal w = (j % 2 == 0 ? binom : -binom);
    for (int i = 0; i < c.n(); ++i) acc[i] += w * f[i];
    binom = binom * (m - j) / (j + 1);
  }
  HiReal hm = pow(h, m);
  for (auto& x : acc) x /= hm;
  return acc;
}

}  // namespace

Jet jet(const CurveSpec& curve, double s, int k) {
  if (k < 0) throw std::invalid_argument("jet: order must be nonnegative");
  if (k > curve.smoothness()) throw std::invalid_argument("jet: order exceeds curve smoothness");
  if (!(s > curve.lo() && s < curve.hi())) throw std::invalid_argument("jet: s outside the curve domain");
  Jet j;
  if (curve.is_polynomial()) {
    j.exact = true;
    const Rational sr = from_double(s);
    for (int i = 1; i <= k; ++i) {
      j.exact_d.push_back(curve.derivative_exact(sr, i));
      j.d.push_back(convert<HiReal>(j.exact_d.back()));
      j.error.push_back(0.0);
    }
    return j;
  }
  const HiReal sh = s;
  const double room = std::min(s - curve.lo(), curve.hi() - s);
  for (int m = 1; m <= k; ++m) {
    // Base step 1e-3 scaled by the order, shrunk to keep the stencil inside the domain.
    double h0 = 1e-3 * m;
    h0 = std::min(h0, 0.9 * 2.0 * room / m);
    if (h0 < 1e-12) throw std::domain_error("jet: step underflow near the domain boundary");
    std::vector<std::vector<std::vector<HiReal>>> tab(kRichardsonLevels);
    HiReal h = h0;
    for (int lvl = 0; lvl < kRichardsonLevels; ++lvl, h /= 2) {
      tab[lvl].push_back(central_difference(curve, sh, m, h));
      HiReal factor = 4;
      for (int q = 1; q <= lvl; ++q, factor *= 4) {
        std::vector<HiReal> r(curve.n());
        for (int i = 0; i < curve.n(); ++i)
          r[i] = tab[lvl][q - 1][i] + (tab[lvl][q - 1][i] - tab[lvl - 1][q - 1][i]) / (factor - 1);
        tab[lvl].push_back(r);
      }
    }
    const auto& best = tab[kRichardsonLevels - 1][kRichardsonLevels - 1];
    const auto& prev = tab[kRichardsonLevels - 2][kRichardsonLevels - 2];
    double err = 0;
    for (int i = 0; i < curve.n(); ++i) err = std::max(err, abs(best[i] - prev[i]).convert_to<double>());
    j.d.push_back(best);
    j.error.push_back(err);
  }
  return j;
}

}  // namespace horolab::curvejet
