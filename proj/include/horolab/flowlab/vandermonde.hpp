#pragma once

#include <vector>

#include "horolab/core/matrix.hpp"

namespace horolab::flowlab {

struct Interval {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
};

struct VandermondeConstant {
  int d = 0;
  Interval j;
  /// |J|^d / (d^{d+1}(1+eta_d)), or 1 when d = 0.
  Rational c_certified;
  /// 1/(d ||V^{-1}||) with the row-sum norm of the exact equispaced inverse.
  Rational c_empirical;
  Rational inverse_row_sum;
  Rational inverse_max_entry;
  /// Whether c_empirical >= c_certified. False for some (d, J); see the unit tests.
  bool empirical_dominates = false;
  /// min(c_certified, c_empirical); only the empirical constant is rigorous.
  Rational c_used() const { return c_empirical < c_certified ? c_empirical : c_certified; }
};

VandermondeConstant vandermonde_constant(int d, const Interval& j);

/// Equispaced nodes eta_0 + i|J|/d.
std::vector<Rational> vandermonde_nodes(int d, const Interval& j);
Matrix<Rational> vandermonde_matrix(const std::vector<Rational>& nodes);

}  // namespace horolab::flowlab
