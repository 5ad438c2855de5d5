#include "horolab/curvejet/frame.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace horolab::curvejet {

namespace {

template <class T>
struct Ldu {
  bool ok = true;
  int fail = 0;
  Matrix<T> l, b;
  std::vector<T> kappa;
};

template <class T>
Ldu<T> ldu(const Matrix<T>& m) {
  const int n = m.rows();
  Ldu<T> out;
  Matrix<T> u = m;
  out.l = Matrix<T>::identity(n);
  for (int i = 0; i < n; ++i) {
    const T pivot = u(i, i);
    bool degenerate;
    if constexpr (scalar_traits<T>::exact) {
      degenerate = scalar_traits<T>::is_zero(pivot);
    } else {
      T rowmax(0);
      for (int j = 0; j < n; ++j) rowmax = std::max<T>(rowmax, scalar_traits<T>::abs(u(i, j)));
      degenerate = rowmax == 0 || scalar_traits<T>::abs(pivot) <= T(kPivotTolerance) * rowmax;
    }
    if (degenerate) {
      out.ok = false;
      out.fail = i + 1;
      return out;
    }
    for (int r = i + 1; r < n; ++r) {
      const T f = u(r, i) / pivot;
      out.l(r, i) = f;
      for (int j = i; j < n; ++j) u(r, j) -= f * u(i, j);
    }
  }
  out.b = Matrix<T>(n, n);
  for (int i = 0; i < n; ++i) {
    out.kappa.push_back(u(i, i));
    for (int j = i; j < n; ++j) out.b(i, j) = u(i, j) / u(i, i);
  }
  return out;
}

template <class T>
std::vector<T> row_times(const std::vector<T>& row, const Matrix<T>& m) {
  std::vector<T> out(m.cols(), T(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[j] += row[i] * m(i, j);
  return out;
}

HiReal factorial(int i) {
  HiReal f = 1;
  for (int q = 2; q <= i; ++q) f *= q;
  return f;
}

}  // namespace

std::vector<HiReal> CurveFrame::taylor_poly(const HiReal& h) const {
  std::vector<HiReal> r(n, HiReal(0));
  HiReal hp = 1;
  for (size_t j = 1; j < coeff.size(); ++j) {
    hp *= h;
    for (int i = 1; i <= n; ++i)
      if (static_cast<int>(j) >= i) r[i - 1] += coeff[j][i - 1] * hp;
  }
  return r;
}

std::vector<Rational> CurveFrame::taylor_poly_exact(const Rational& h) const {
  if (!exact_frame) throw std::logic_error("taylor_poly_exact: frame is not exact");
  std::vector<Rational> r(n, Rational(0));
  Rational hp = 1;
  for (size_t j = 1; j < exact_frame->coeff.size(); ++j) {
    hp *= h;
    for (int i = 1; i <= n; ++i)
      if (static_cast<int>(j) >= i) r[i - 1] += exact_frame->coeff[j][i - 1] * hp;
  }
  return r;
}

CurveFrame ordered_regular_frame(const CurveSpec& curve, double s, int k) {
  const int n = curve.n();
  const int order = std::max(n, k);
  CurveFrame f;
  f.s = s;
  f.n = n;
  f.k = k;
  const Jet j = jet(curve, s, order);
  f.exact = j.exact;
  for (int i = 1; i <= order; ++i) {
    std::vector<HiReal> row = j.d[i - 1];
    for (auto& x : row) x /= factorial(i);
    f.rows.push_back(row);
  }
  f.m = Matrix<HiReal>(n, n);
  for (int i = 0; i < n; ++i) f.m.set_row(i, f.rows[i]);

  if (j.exact) {
    ExactFrame ex;
    ex.m = Matrix<Rational>(n, n);
    std::vector<std::vector<Rational>> erows;
    Rational fact = 1;
    for (int i = 1; i <= order; ++i) {
      fact *= i;
      std::vector<Rational> row = j.exact_d[i - 1];
      for (auto& x : row) x /= fact;
      erows.push_back(row);
      if (i <= n) ex.m.set_row(i - 1, row);
    }
    auto d = ldu(ex.m);
    if (!d.ok) {
      f.failing_index = d.fail;
      return f;
    }
    ex.b = d.b;
    ex.kappa = d.kappa;
    const Matrix<Rational> binv = inverse(d.b);
    ex.coeff.push_back(std::vector<Rational>(n, Rational(0)));
    for (const auto& row : erows) ex.coeff.push_back(row_times(row, binv));
    f.ordered_regular = true;
    f.l = convert<HiReal>(d.l);
    f.b = convert<HiReal>(d.b);
    f.kappa = convert<HiReal>(d.kappa);
    for (const auto& c : ex.coeff) f.coeff.push_back(convert<HiReal>(c));
    f.exact_frame = std::move(ex);
  } else {
    auto d = ldu(f.m);
    if (!d.ok) {
      f.failing_index = d.fail;
      return f;
    }
    f.ordered_regular = true;
    f.l = d.l;
    f.b = d.b;
    f.kappa = d.kappa;
    const Matrix<HiReal> binv = inverse(d.b);
    f.coeff.push_back(std::vector<HiReal>(n, HiReal(0)));
    for (const auto& row : f.rows) f.coeff.push_back(row_times(row, binv));
  }
  for (size_t jj = 0; jj < f.coeff.size(); ++jj) {
    std::vector<HiReal> c = f.coeff[jj];
    if (jj % 2 == 1)
      for (auto& x : c) x = -x;
    f.coeff_tilde.push_back(c);
  }
  return f;
}

std::vector<HiReal> taylor_frame_remainder(const CurveSpec& curve, const CurveFrame& frame, double h) {
  if (!frame.ordered_regular) throw std::invalid_argument("taylor_frame_remainder: frame is not ordered regular");
  if (!(frame.s + h > curve.lo() && frame.s + h < curve.hi()))
    throw std::invalid_argument("taylor_frame_remainder: s + h outside the domain");
  if (frame.exact_frame) {
    const Rational s = from_double(frame.s);
    const Rational hr = from_double(h);
    auto a = curve.eval_exact(s + hr);
    auto b = curve.eval_exact(s);
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    auto lhs = row_times(a, inverse(frame.exact_frame->b));
    auto r = frame.taylor_poly_exact(hr);
    for (size_t i = 0; i < lhs.size(); ++i) lhs[i] -= r[i];
    return convert<HiReal>(lhs);
  }
  const HiReal s = frame.s;
  const HiReal hh = h;
  auto a = curve.eval(s + hh);
  auto b = curve.eval(s);
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  auto lhs = row_times(a, inverse(frame.b));
  auto r = frame.taylor_poly(hh);
  for (size_t i = 0; i < lhs.size(); ++i) lhs[i] -= r[i];
  return lhs;
}

std::vector<HiReal> taylor_frame_remainder(const CurveSpec& curve, double s, int k, double h) {
  return taylor_frame_remainder(curve, ordered_regular_frame(curve, s, k), h);
}

std::vector<WedgeTerm> wedge_expand(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("wedge_expand: need n >= 1 and m >= 0");
  std::map<std::vector<int>, long long> terms;
  std::vector<int> base(n);
  for (int i = 0; i < n; ++i) base[i] = i + 1;
  terms[base] = 1;
  for (int step = 0; step < m; ++step) {
    std::map<std::vector<int>, long long> next;
    for (const auto& [j, c] : terms)
      for (int p = 0; p < n; ++p) {
        std::vector<int> jj = j;
        ++jj[p];
        if (p + 1 < n && jj[p] == jj[p + 1]) continue;  // repeated factor
        next[jj] += c;
      }
    terms = std::move(next);
  }
  std::vector<WedgeTerm> out;
  for (const auto& [j, c] : terms) out.push_back({j, c});
  return out;
}

RegularityScan regularity_scan(const CurveSpec& curve, double a, double b, int grid, int k) {
  if (grid < 2) throw std::invalid_argument("regularity_scan: grid must be >= 2");
  if (!(a < b)) throw std::invalid_argument("regularity_scan: empty interval");
  RegularityScan rep;
  const int order = k > 0 ? k : curve.n();
  int last_fail = -2;
  for (int i = 1; i < grid; ++i) {
    const double s = ((grid - i) * a + i * b) / grid;
    rep.grid.push_back(s);
    if (ordered_regular_frame(curve, s, order).ordered_regular) continue;
    rep.failures.push_back(s);
    if (last_fail == i - 1)
      rep.clusters.back().second = s;
    else
      rep.clusters.emplace_back(s, s);
    last_fail = i;
  }
  return rep;
}

}  // namespace horolab::curvejet
