#include "horolab/latticelab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace horolab::latticelab {

namespace {

using Vec = std::vector<long double>;

long double dot(const Vec& a, const Vec& b) {
  long double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Vec> to_rows(const Matrix<double>& m) {
  std::vector<Vec> r(m.rows(), Vec(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

/// Gram-Schmidt coefficients mu and squared norms of b*.
void gram_schmidt(const std::vector<Vec>& b, std::vector<Vec>& mu, Vec& bstar_sq) {
  const size_t n = b.size();
  std::vector<Vec> bs(b);
  mu.assign(n, Vec(n, 0));
  bstar_sq.assign(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      mu[i][j] = dot(b[i], bs[j]) / bstar_sq[j];
      for (size_t k = 0; k < bs[i].size(); ++k) bs[i][k] -= mu[i][j] * bs[j][k];
    }
    bstar_sq[i] = dot(bs[i], bs[i]);
    if (!(bstar_sq[i] > 0)) throw std::domain_error("lattice: numerically dependent rows");
  }
}

}  // namespace

LatticeBasis LatticeBasis::standard(int dim) { return {Matrix<double>::identity(dim), {"Z^" + std::to_string(dim)}}; }

LatticeBasis LatticeBasis::from_rows(Matrix<double> rows, std::string tag) {
  if (!rows.square() || rows.rows() < 1) throw std::invalid_argument("lattice: basis must be square");
  const double d = determinant(rows);
  if (std::fabs(d - 1) > 1e-9) throw std::invalid_argument("lattice: basis is not unimodular (det " + std::to_string(d) + ")");
  return {std::move(rows), {std::move(tag)}};
}

LatticeBasis LatticeBasis::unimodularize(Matrix<double> rows, std::string tag) {
  if (!rows.square()) throw std::invalid_argument("lattice: basis must be square");
  const int n = rows.rows();
  double d = determinant(rows);
  if (d == 0) throw std::domain_error("lattice: dependent rows");
  if (d < 0)
    for (int j = 0; j < n; ++j) rows(n - 1, j) = -rows(n - 1, j);
  rows *= std::pow(std::fabs(d), -1.0 / n);
  return from_rows(std::move(rows), std::move(tag));
}

LatticeBasis LatticeBasis::translated(const Matrix<double>& g, const std::string& tag) const {
  LatticeBasis out{rows * transpose(g), provenance};
  out.provenance.push_back(tag);
  return out;
}

Reduction lll_reduce(const LatticeBasis& basis, double delta) {
  if (!(delta > 0.25 && delta < 1)) throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1)");
  const int n = basis.dim();
  std::vector<Vec> b = to_rows(basis.rows);
  std::vector<Vec> u(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  std::vector<Vec> mu;
  Vec bsq;
  gram_schmidt(b, mu, bsq);

  Reduction red;
  int k = 1;
  const int max_iter = 100000;
  for (int iter = 0; k < n; ++iter) {
    if (iter > max_iter) throw std::domain_error("lll_reduce: no convergence");
    for (int j = k - 1; j >= 0; --j) {
      const long double q = std::nearbyint(mu[k][j]);
      if (q == 0) continue;
      for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[j][c];
      for (int c = 0; c < n; ++c) u[k][c] -= q * u[j][c];
      gram_schmidt(b, mu, bsq);
    }
    if (bsq[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bsq[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      ++red.swaps;
      gram_schmidt(b, mu, bsq);
      k = std::max(k - 1, 1);
    }
  }
  Matrix<double> rows(n, basis.rows.cols()), tr(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < basis.rows.cols(); ++j) rows(i, j) = static_cast<double>(b[i][j]);
    for (int j = 0; j < n; ++j) tr(i, j) = static_cast<double>(u[i][j]);
  }
  red.basis = {rows, basis.provenance};
  red.basis.provenance.push_back("lll");
  red.transform = tr;
  return red;
}

ShortestVector enumerate_shortest(const Matrix<double>& rows, double radius) {
  const int n = rows.rows();
  std::vector<Vec> b = to_rows(rows);
  std::vector<Vec> mu;
  Vec bsq;
  gram_schmidt(b, mu, bsq);
  long double r2 = radius > 0 ? static_cast<long double>(radius) * radius : std::numeric_limits<long double>::infinity();
  if (radius <= 0)
    for (const auto& row : b) r2 = std::min(r2, dot(row, row));
  r2 *= 1 + 1e-12L;

  ShortestVector best;
  best.length = std::numeric_limits<double>::infinity();
  long double best_sq = std::numeric_limits<long double>::infinity();
  std::vector<long long> x(n, 0);
  Vec center(n, 0), partial(n + 1, 0);

  // Plain depth-first Fincke-Pohst from the last level down; dimensions stay small.
  auto recurse = [&](auto&& self, int level) -> void {
    long double c = 0;
    for (int j = level + 1; j < n; ++j) c -= x[j] * mu[j][level];
    const long double rem = std::min(r2, best_sq) - partial[level + 1];
    if (rem < 0) return;
    const long double span = std::sqrt(rem / bsq[level]);
    const long long lo = static_cast<long long>(std::ceil(c - span));
    const long long hi = static_cast<long long>(std::floor(c + span));
    for (long long v = lo; v <= hi; ++v) {
      x[level] = v;
      const long double d = v - c;
      partial[level] = partial[level + 1] + d * d * bsq[level];
      if (partial[level] > std::min(r2, best_sq)) continue;
      if (level > 0) {
        self(self, level - 1);
      } else {
        bool nonzero = false;
        for (auto xi : x) nonzero = nonzero || xi != 0;
        if (nonzero && partial[0] < best_sq) {
          best_sq = partial[0];
          best.coeffs = x;
        }
      }
    }
    x[level] = 0;
  };
  recurse(recurse, n - 1);
  if (best.coeffs.empty()) throw std::domain_error("enumerate_shortest: no vector within the radius");
  best.vector.assign(rows.cols(), 0.0);
  long double len = 0;
  for (int c = 0; c < rows.cols(); ++c) {
    long double s = 0;
    for (int i = 0; i < n; ++i) s += best.coeffs[i] * b[i][c];
    best.vector[c] = static_cast<double>(s);
    len += s * s;
  }
  best.length = static_cast<double>(std::sqrt(len));
  return best;
}

std::vector<std::vector<long long>> enumerate_ball(const Matrix<double>& rows, double radius, size_t limit) {
  const int n = rows.rows();
  std::vector<Vec> b = to_rows(rows);
  std::vector<Vec> mu;
  Vec bsq;
  gram_schmidt(b, mu, bsq);
  const long double r2 = static_cast<long double>(radius) * radius * (1 + 1e-12L);
  std::vector<std::vector<long long>> out;
  std::vector<long long> x(n, 0);
  Vec partial(n + 1, 0);
  auto recurse = [&](auto&& self, int level) -> void {
    long double c = 0;
    for (int j = level + 1; j < n; ++j) c -= x[j] * mu[j][level];
    const long double rem = r2 - partial[level + 1];
    if (rem < 0) return;
    const long double span = std::sqrt(rem / bsq[level]);
    const long long lo = static_cast<long long>(std::ceil(c - span));
    const long long hi = static_cast<long long>(std::floor(c + span));
    for (long long v = lo; v <= hi; ++v) {
      x[level] = v;
      const long double d = v - c;
      partial[level] = partial[level + 1] + d * d * bsq[level];
      if (partial[level] > r2) continue;
      if (level > 0) {
        self(self, level - 1);
      } else if (std::any_of(x.begin(), x.end(), [](long long xi) { return xi != 0; })) {
        if (out.size() >= limit) throw std::length_error("enumerate_ball: too many points");
        out.push_back(x);
      }
    }
    x[level] = 0;
  };
  recurse(recurse, n - 1);
  return out;
}

double systole(const LatticeBasis& basis) { return enumerate_shortest(lll_reduce(basis).basis.rows).length; }

std::vector<std::string> catalog_names() { return {"Z", "hex", "shear", "rotation", "golden"}; }

LatticeBasis catalog_basis(const std::string& name, int dim) {
  if (dim < 2) throw std::invalid_argument("catalog_basis: dimension must be >= 2");
  Matrix<double> m = Matrix<double>::identity(dim);
  if (name == "Z") return LatticeBasis::standard(dim);
  if (name == "hex") {
    // A_n-type root lattice directions: e_i plus a half step along the previous row.
    for (int i = 1; i < dim; ++i) m(i, i - 1) = 0.5;
    for (int i = 1; i < dim; ++i) m(i, i) = std::sqrt(3.0) / 2;
  } else if (name == "shear") {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (i != j) m(i, j) = 0.1 * (i + 1) + 0.07 * (j + 2);
  } else if (name == "rotation") {
    for (int i = 0; i + 1 < dim; i += 2) {
      const double th = 0.7 + 0.3 * i;
      m(i, i) = std::cos(th);
      m(i, i + 1) = -std::sin(th);
      m(i + 1, i) = std::sin(th);
      m(i + 1, i + 1) = std::cos(th);
    }
    for (int j = 0; j < dim; ++j) m(dim - 1, j) += 0.25;
  } else if (name == "golden") {
    const double phi = std::numbers::phi;
    // Irrational entries in the first row keep every horocycle through it non-periodic.
    for (int j = 1; j < dim; ++j) m(0, j) = std::fmod(phi * j, 1.0);
  } else {
    throw std::invalid_argument("unknown catalog basis '" + name + "'");
  }
  return LatticeBasis::unimodularize(m, name);
}

}  // namespace horolab::latticelab
