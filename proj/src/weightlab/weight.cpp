#include "horolab/weightlab/weight.hpp"

#include <stdexcept>

namespace horolab::weightlab {

Weight Weight::from_character(const std::vector<Rational>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Rational total = 0;
  for (const auto& x : c) total += x;
  // sum_k c_k eps_k with eps_0 = sum beta_i/(n+1) and eps_j = eps_0 - beta_j.
  std::vector<Rational> m(n);
  for (int i = 0; i < n; ++i) {
    m[i] = total / (n + 1) - c[i + 1];
    m[i].canonicalize();
  }
  return Weight(std::move(m));
}

Weight Weight::beta(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("Weight::beta: index out of range");
  Weight w = zero(n);
  w.m_[i - 1] = 1;
  return w;
}

Rational Weight::operator()(const Matrix<Rational>& h) const {
  if (h.rows() != n() + 1 || h.cols() != n() + 1) throw std::invalid_argument("Weight: size mismatch");
  Rational v = 0;
  for (int i = 0; i < n(); ++i) v += m_[i] * (h(0, 0) - h(i + 1, i + 1));
  return v;
}

Rational Weight::eval_diag(const std::vector<Rational>& d) const {
  Rational v = 0;
  for (int i = 0; i < n(); ++i) v += m_[i] * (d[0] - d[i + 1]);
  return v;
}

double Weight::eval_diag(const std::vector<double>& d) const {
  double v = 0;
  for (int i = 0; i < n(); ++i) v += m_[i].get_d() * (d[0] - d[i + 1]);
  return v;
}

Weight Weight::operator+(const Weight& o) const {
  if (o.n() != n()) throw std::invalid_argument("Weight: rank mismatch");
  std::vector<Rational> m(m_);
  for (int i = 0; i < n(); ++i) m[i] += o.m_[i];
  return Weight(std::move(m));
}

Weight Weight::operator-(const Weight& o) const { return *this + (-o); }

Weight Weight::operator-() const {
  std::vector<Rational> m(m_);
  for (auto& x : m) x = -x;
  return Weight(std::move(m));
}

std::strong_ordering Weight::operator<=>(const Weight& o) const {
  for (int i = n() - 1; i >= 0; --i) {
    int c = cmp(m_[i], o.m_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return n() <=> o.n();
}

std::string Weight::to_string() const {
  std::string s = "(";
  for (int i = 0; i < n(); ++i) {
    if (i) s += ", ";
    s += horolab::to_string(m_[i]);
  }
  return s + ")";
}

}  // namespace horolab::weightlab
