#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "horolab/core/matrix.hpp"

namespace horolab::curvejet {

/// A curve phi: (lo, hi) -> R^n. Polynomial curves carry an exact
/// coefficient table; everything else is differentiated numerically.
class CurveSpec {
 public:
  using Callback = std::function<std::vector<HiReal>(const HiReal&)>;

  /// (s, s^2, ..., s^n).
  static CurveSpec moment(int n);
  /// (sin s, cos s).
  static CurveSpec trig();
  /// (sin s, s^2).
  static CurveSpec sin_square();
  /// coeffs[c][p] is the coefficient of s^p in component c.
  static CurveSpec polynomial(std::vector<std::vector<Rational>> coeffs, std::string name = "poly");
  /// Local Lagrange interpolation of the given degree through the nearest nodes.
  static CurveSpec tabulated(std::vector<double> s, std::vector<std::vector<double>> values, int degree);
  static CurveSpec callback(std::string name, int n, Callback f, double lo, double hi, int smoothness);
  /// "moment", "moment:<n>", "trig", "sin-square", "poly:<c0,c1,..;...>".
  static CurveSpec parse(const std::string& preset);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  bool is_polynomial() const { return poly_.has_value(); }
  const std::vector<std::vector<Rational>>& coefficients() const { return *poly_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int smoothness() const { return smoothness_; }

  std::vector<HiReal> eval(const HiReal& s) const;
  std::vector<double> eval(double s) const;
  /// Polynomial curves only.
  std::vector<Rational> eval_exact(const Rational& s) const;
  /// Exact i-th derivative (polynomial curves only).
  std::vector<Rational> derivative_exact(const Rational& s, int order) const;

 private:
  std::string name_;
  int n_ = 0;
  double lo_ = -1e300;
  double hi_ = 1e300;
  int smoothness_ = 64;
  Callback f_;
  std::optional<std::vector<std::vector<Rational>>> poly_;
};

struct Jet {
  /// d[i-1] is phi^{(i)}(s).
  std::vector<std::vector<HiReal>> d;
  /// Per-order error estimate (zero in exact mode).
  std::vector<double> error;
  bool exact = false;
  std::vector<std::vector<Rational>> exact_d;
};

/// Derivatives phi^{(1)}..phi^{(k)} at s.
Jet jet(const CurveSpec& curve, double s, int k);

}  // namespace horolab::curvejet
