#pragma once

#include <compare>
#include <string>
#include <vector>

#include "horolab/core/matrix.hpp"

namespace horolab::weightlab {

/// Linear functional on the diagonal Cartan subalgebra, stored as
/// coefficients in the basis beta_i(diag(a)) = a_0 - a_i.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<Rational> beta_coeffs) : m_(std::move(beta_coeffs)) {}

  static Weight zero(int n) { return Weight(std::vector<Rational>(n, Rational(0))); }
  /// Weight of a vector on which diag(a) acts by sum_k c_k a_k.
  static Weight from_character(const std::vector<Rational>& c);
  /// The simple coordinate weight beta_i.
  static Weight beta(int n, int i);

  int n() const { return static_cast<int>(m_.size()); }
  const std::vector<Rational>& beta_coeffs() const { return m_; }

  /// Value on a diagonal matrix (trace is ignored).
  Rational operator()(const Matrix<Rational>& h) const;
  Rational eval_diag(const std::vector<Rational>& diag) const;
  double eval_diag(const std::vector<double>& diag) const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;

  bool operator==(const Weight& o) const { return m_ == o.m_; }
  /// Lexicographic order reading coefficients from beta_n down to beta_1.
  std::strong_ordering operator<=>(const Weight& o) const;

  std::string to_string() const;

 private:
  std::vector<Rational> m_;
};

}  // namespace horolab::weightlab
