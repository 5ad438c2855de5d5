#include "horolab/flowlab/vandermonde.hpp"

#include <stdexcept>

namespace horolab::flowlab {

std::vector<Rational> vandermonde_nodes(int d, const Interval& j) {
  if (d == 0) return {j.lo};
  std::vector<Rational> nodes;
  for (int i = 0; i <= d; ++i) {
    Rational x = j.lo + j.length() * Rational(i) / Rational(d);
    x.canonicalize();
    nodes.push_back(x);
  }
  return nodes;
}

Matrix<Rational> vandermonde_matrix(const std::vector<Rational>& nodes) {
  const int m = static_cast<int>(nodes.size());
  Matrix<Rational> v(m, m);
  for (int i = 0; i < m; ++i) {
    Rational p(1);
    for (int k = 0; k < m; ++k) {
      v(i, k) = p;
      p *= nodes[i];
    }
  }
  return v;
}

VandermondeConstant vandermonde_constant(int d, const Interval& j) {
  if (d < 0) throw std::invalid_argument("vandermonde_constant: d must be nonnegative");
  if (!(j.lo > 0) || !(j.hi > j.lo)) throw std::invalid_argument("vandermonde_constant: degenerate interval");
  VandermondeConstant c;
  c.d = d;
  c.j = j;
  if (d == 0) {
    c.c_certified = c.c_empirical = c.inverse_row_sum = c.inverse_max_entry = Rational(1);
    c.empirical_dominates = true;
    return c;
  }
  Rational len_pow(1), d_pow(1);
  for (int i = 0; i < d; ++i) {
    len_pow *= j.length();
    d_pow *= d;
  }
  c.c_certified = len_pow / (d_pow * d * (1 + j.hi));
  c.c_certified.canonicalize();

  const auto inv = inverse(vandermonde_matrix(vandermonde_nodes(d, j)));
  c.inverse_row_sum = sup_operator_norm(inv);
  c.inverse_max_entry = max_abs(inv);
  c.c_empirical = 1 / (Rational(d) * c.inverse_row_sum);
  c.c_empirical.canonicalize();
  c.empirical_dominates = c.c_empirical >= c.c_certified;
  return c;
}

}  // namespace horolab::flowlab
