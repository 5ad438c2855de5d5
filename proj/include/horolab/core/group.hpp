#pragma once

#include <vector>

#include "horolab/core/matrix.hpp"

// Named elements of SL(n+1) and sl(n+1) over the basis e_0..e_n.
namespace horolab::group {

using RMat = Matrix<Rational>;

/// u(x): identity plus x in row 0, columns 1..n.
template <class T = Rational>
Matrix<T> u(const std::vector<T>& x) {
  const int n = static_cast<int>(x.size());
  auto m = Matrix<T>::identity(n + 1);
  for (int i = 0; i < n; ++i) m(0, i + 1) = x[i];
  return m;
}

/// Lower-triangular all-ones matrix.
RMat u_minus(int n);
/// Upper-triangular all-ones matrix.
RMat u_plus(int n);
/// [[0,...,0,1],[-I_n | 0]].
RMat sigma(int n);
/// Swap-type element with kappa at (0,n) and -1/kappa at (n,0).
RMat sigma_kappa(int n, const Rational& kappa);
/// I + r E_{i0}.
RMat u_minus_r(int n, int i, const Rational& r);
/// I + r E_{0i}.
RMat u_r(int n, int i, const Rational& r);
/// [[0,r],[-1/r,0]] embedded in rows/cols (0,i).
RMat sigma1(int n, int i, const Rational& r);
/// I + zeta E_{n1}.
RMat u_n1(int n, const Rational& zeta);
/// diag(1, 1/x_1, ..., 1/x_n).
RMat a_x(const std::vector<Rational>& x);

/// Exact exponential of a nilpotent matrix.
RMat exp_nilpotent(const RMat& x);
/// Exact logarithm of a unipotent matrix.
RMat log_unipotent(const RMat& u);

RMat H_C(int n);
/// H_k = diag(n, -n/k (k times), 0, ...).
RMat H_k(int n, int k);
/// diag(1, ..., 1, -n).
RMat H_tilde(int n);
/// (n/n0) diag(n0, -1 (n0 times), 0, ...).
RMat H_n0(int n, int n0);
/// E_00 - E_ii.
RMat A_i(int n, int i);

/// diag(e^{nt}, e^{-r_1}, ..., e^{-r_n}).
Matrix<double> a_t(double t, const std::vector<double>& r);

}  // namespace horolab::group
