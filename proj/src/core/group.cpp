#include "horolab/core/group.hpp"

#include <cmath>
#include <stdexcept>

namespace horolab::group {

RMat u_minus(int n) {
  RMat m(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = 1;
  return m;
}

RMat u_plus(int n) { return transpose(u_minus(n)); }

RMat sigma(int n) {
  RMat m(n + 1, n + 1);
  m(0, n) = 1;
  for (int i = 1; i <= n; ++i) m(i, i - 1) = -1;
  return m;
}

RMat sigma_kappa(int n, const Rational& kappa) {
  if (sgn(kappa) == 0) throw std::invalid_argument("sigma_kappa: kappa must be nonzero");
  RMat m = RMat::identity(n + 1);
  m(0, 0) = 0;
  m(n, n) = 0;
  m(0, n) = kappa;
  m(n, 0) = Rational(-1) / kappa;
  return m;
}

RMat u_minus_r(int n, int i, const Rational& r) {
  RMat m = RMat::identity(n + 1);
  m(i, 0) = r;
  return m;
}

RMat u_r(int n, int i, const Rational& r) {
  RMat m = RMat::identity(n + 1);
  m(0, i) = r;
  return m;
}

RMat sigma1(int n, int i, const Rational& r) {
  if (sgn(r) == 0) throw std::invalid_argument("sigma1: r must be nonzero");
  RMat m = RMat::identity(n + 1);
  m(0, 0) = 0;
  m(i, i) = 0;
  m(0, i) = r;
  m(i, 0) = Rational(-1) / r;
  return m;
}

RMat u_n1(int n, const Rational& zeta) {
  RMat m = RMat::identity(n + 1);
  m(n, 1) = zeta;
  return m;
}

RMat a_x(const std::vector<Rational>& x) {
  const int n = static_cast<int>(x.size());
  RMat m = RMat::identity(n + 1);
  for (int i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) throw std::invalid_argument("a_x: coordinates must be nonzero");
    m(i + 1, i + 1) = Rational(1) / x[i];
  }
  return m;
}

RMat exp_nilpotent(const RMat& x) {
  const int d = x.rows();
  RMat sum = RMat::identity(d);
  RMat term = RMat::identity(d);
  for (int k = 1; k <= d; ++k) {
    term = term * x;
    term *= make_rational(1, k);
    if (term.is_zero()) return sum;
    sum += term;
  }
  if (!(term * x).is_zero()) throw std::invalid_argument("exp_nilpotent: matrix is not nilpotent");
  return sum;
}

RMat log_unipotent(const RMat& u) {
  const int d = u.rows();
  RMat nil = u - RMat::identity(d);
  RMat sum(d, d);
  RMat power = RMat::identity(d);
  for (int k = 1; k <= d; ++k) {
    power = power * nil;
    if (power.is_zero()) return sum;
    sum += power * make_rational(k % 2 == 1 ? 1 : -1, k);
  }
  if (!(power * nil).is_zero()) throw std::invalid_argument("log_unipotent: matrix is not unipotent");
  return sum;
}

RMat H_C(int n) {
  RMat m(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) m(i, i) = make_rational(n, 2) - i;
  return m;
}

RMat H_k(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("H_k: index out of range");
  RMat m(n + 1, n + 1);
  m(0, 0) = n;
  for (int i = 1; i <= k; ++i) m(i, i) = make_rational(-n, k);
  return m;
}

RMat H_tilde(int n) {
  RMat m = RMat::identity(n + 1);
  m(n, n) = -n;
  return m;
}

RMat H_n0(int n, int n0) {
  if (n0 < 1 || n0 > n) throw std::invalid_argument("H_n0: n0 out of range");
  RMat m(n + 1, n + 1);
  const Rational scale = make_rational(n, n0);
  m(0, 0) = scale * n0;
  for (int i = 1; i <= n0; ++i) m(i, i) = -scale;
  return m;
}

RMat A_i(int n, int i) {
  RMat m(n + 1, n + 1);
  m(0, 0) = 1;
  m(i, i) = -1;
  return m;
}

Matrix<double> a_t(double t, const std::vector<double>& r) {
  const int n = static_cast<int>(r.size());
  Matrix<double> m(n + 1, n + 1);
  m(0, 0) = std::exp(n * t);
  for (int i = 0; i < n; ++i) m(i + 1, i + 1) = std::exp(-r[i]);
  return m;
}

}  // namespace horolab::group
