#pragma once

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "horolab/core/scalar.hpp"

namespace horolab {

/// Small dense row-major matrix. Sizes in this project stay below ~64, so
/// no blocking or expression templates.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T(0)) {}
  Matrix(int rows, int cols, std::initializer_list<T> values) : Matrix(rows, cols) {
    if (values.size() != data_.size()) throw std::invalid_argument("Matrix: initializer size mismatch");
    std::copy(values.begin(), values.end(), data_.begin());
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }
  /// The elementary matrix E_{ij}.
  static Matrix unit(int n, int i, int j) {
    Matrix m(n, n);
    m(i, j) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<T> row(int i) const {
    return std::vector<T>(data_.begin() + static_cast<long>(i) * cols_,
                          data_.begin() + static_cast<long>(i + 1) * cols_);
  }
  void set_row(int i, const std::vector<T>& r) {
    assert(static_cast<int>(r.size()) == cols_);
    std::copy(r.begin(), r.end(), data_.begin() + static_cast<long>(i) * cols_);
  }

  const std::vector<T>& data() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (scalar_traits<T>::is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != static_cast<int>(v.size())) throw std::invalid_argument("Matrix: vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k)
        if (!scalar_traits<T>::is_zero(v[k])) out[i] += a(i, k) * v[k];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return scalar_traits<T>::is_zero(x); });
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (scalar_traits<T>::is_zero(a(i, j))) continue;
      for (int p = 0; p < b.rows(); ++p)
        for (int q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

/// Largest absolute entry.
template <class T>
T max_abs(const Matrix<T>& a) {
  T m(0);
  for (const auto& x : a.data()) {
    T ax = scalar_traits<T>::abs(x);
    if (ax > m) m = ax;
  }
  return m;
}

/// Operator norm induced by the sup-norm on vectors (max absolute row sum).
template <class T>
T sup_operator_norm(const Matrix<T>& a) {
  T best(0);
  for (int i = 0; i < a.rows(); ++i) {
    T s(0);
    for (int j = 0; j < a.cols(); ++j) s += scalar_traits<T>::abs(a(i, j));
    if (s > best) best = s;
  }
  return best;
}

template <class T>
T sup_norm(const std::vector<T>& v) {
  T m(0);
  for (const auto& x : v) {
    T ax = scalar_traits<T>::abs(x);
    if (ax > m) m = ax;
  }
  return m;
}

/// Gauss-Jordan inverse with max-magnitude pivoting. Throws on singular input.
template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (!a.square()) throw std::invalid_argument("inverse: matrix not square");
  const int n = a.rows();
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    T best = scalar_traits<T>::abs(m(c, c));
    for (int r = c + 1; r < n; ++r) {
      T v = scalar_traits<T>::abs(m(r, c));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (scalar_traits<T>::is_zero(best)) throw std::domain_error("inverse: singular matrix");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    T p = m(c, c);
    for (int j = 0; j < n; ++j) {
      m(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || scalar_traits<T>::is_zero(m(r, c))) continue;
      T f = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

template <class T>
T determinant(Matrix<T> m) {
  if (!m.square()) throw std::invalid_argument("determinant: matrix not square");
  const int n = m.rows();
  T det(1);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    T best = scalar_traits<T>::abs(m(c, c));
    for (int r = c + 1; r < n; ++r) {
      T v = scalar_traits<T>::abs(m(r, c));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (scalar_traits<T>::is_zero(best)) return T(0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (scalar_traits<T>::is_zero(m(r, c))) continue;
      T f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

template <class To, class From>
Matrix<To> convert(const Matrix<From>& a) {
  Matrix<To> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = scalar_cast<To>(a(i, j));
  return out;
}

template <class To, class From>
std::vector<To> convert(const std::vector<From>& v) {
  std::vector<To> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(scalar_cast<To>(x));
  return out;
}

}  // namespace horolab
