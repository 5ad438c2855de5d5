#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horolab/curvejet/curve.hpp"

namespace horolab::curvejet {

inline constexpr double kPivotTolerance = 1e-10;

struct ExactFrame {
  Matrix<Rational> m;
  Matrix<Rational> b;
  std::vector<Rational> kappa;
  /// coeff[j][i-1]: coefficient of h^j in R_i (j = 0..K).
  std::vector<std::vector<Rational>> coeff;
};

/// Ordered-regularity frame at s: M_phi(s) = L diag(kappa) B(s).
struct CurveFrame {
  double s = 0;
  int n = 0;
  int k = 0;
  bool ordered_regular = false;
  int failing_index = 0;  // first i with a vanishing pivot, 0 when regular
  bool exact = false;
  /// rows[i-1] = phi^{(i)}(s)/i!, i = 1..max(n,k).
  std::vector<std::vector<HiReal>> rows;
  Matrix<HiReal> m;
  Matrix<HiReal> l;
  Matrix<HiReal> b;
  std::vector<HiReal> kappa;
  /// coeff[j][i-1]: coefficient of h^j in R_i(h), so kappa_{i,j} = coeff[j][i-1].
  std::vector<std::vector<HiReal>> coeff;
  /// Same table for the reflected polynomial used when h < 0.
  std::vector<std::vector<HiReal>> coeff_tilde;
  std::optional<ExactFrame> exact_frame;

  HiReal kappa_ij(int i, int j) const { return coeff.at(j).at(i - 1); }
  /// R_s(h).
  std::vector<HiReal> taylor_poly(const HiReal& h) const;
  std::vector<Rational> taylor_poly_exact(const Rational& h) const;
};

CurveFrame ordered_regular_frame(const CurveSpec& curve, double s, int k);

/// (phi(s+h) - phi(s)) B(s)^{-1} - R_s(h).
std::vector<HiReal> taylor_frame_remainder(const CurveSpec& curve, double s, int k, double h);
std::vector<HiReal> taylor_frame_remainder(const CurveSpec& curve, const CurveFrame& frame, double h);

struct WedgeTerm {
  std::vector<int> j;
  long long c = 0;
  bool operator==(const WedgeTerm&) const = default;
};

/// psi^{(m)} for psi = phi' ^ ... ^ phi^{(n)} as sum c_J phi^{(j_1)} ^ ... ^ phi^{(j_n)}.
std::vector<WedgeTerm> wedge_expand(int n, int m);

struct RegularityScan {
  std::vector<double> grid;
  std::vector<double> failures;
  std::vector<std::pair<double, double>> clusters;
};

/// Interior grid s_i = ((G-i)a + ib)/G, i = 1..G-1.
RegularityScan regularity_scan(const CurveSpec& curve, double a, double b, int grid, int k = 0);

}  // namespace horolab::curvejet
