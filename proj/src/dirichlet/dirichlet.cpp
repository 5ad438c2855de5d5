#include "horolab/dirichlet/dirichlet.hpp"

#include <boost/numeric/interval.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace horolab::dirichlet {

std::string to_string(Form f) { return f == Form::Primal ? "primal" : "dual"; }

namespace {

DIQuery make(Form f, std::vector<double> xi, std::vector<long long> n, Rational mu) {
  DIQuery q;
  q.form = f;
  q.xi = std::move(xi);
  q.n_box = std::move(n);
  q.mu = std::move(mu);
  q.mu.canonicalize();
  q.validate();
  return q;
}

DIQuery make_exact(Form f, std::vector<Rational> xi, std::vector<long long> n, Rational mu) {
  std::vector<double> xd;
  for (auto& x : xi) {
    x.canonicalize();
    xd.push_back(x.get_d());
  }
  DIQuery q = make(f, std::move(xd), std::move(n), std::move(mu));
  q.xi_exact = std::move(xi);
  return q;
}

enum class Tri { False, Unknown, True };

/// Exact rational comparisons.
struct ExactArith {
  using T = Rational;
  static T num(const Rational& r) { return r; }
  static T integer(long long v) { return Rational(static_cast<long>(v)); }
  static std::vector<T> xi(const DIQuery& q) {
    if (q.xi_exact) return *q.xi_exact;
    std::vector<T> out;
    for (double x : q.xi) out.push_back(Rational(x));
    return out;
  }
  static double mid(const T& x) { return x.get_d(); }
  static T absval(const T& x) { return rabs(x); }
  static Tri le(const T& a, const T& b) { return a <= b ? Tri::True : Tri::False; }
};

/// Outward-rounded interval comparisons; "found" is never a false positive.
struct IntervalArith {
  using T = boost::numeric::interval<double>;
  static T num(const Rational& r) {
    const double d = r.get_d();
    if (Rational(d) == r) return T(d);
    return T(std::nextafter(d, -INFINITY), std::nextafter(d, INFINITY));
  }
  static T integer(long long v) {
    const double d = static_cast<double>(v);
    if (static_cast<long long>(d) == v) return T(d);
    return T(std::nextafter(d, -INFINITY), std::nextafter(d, INFINITY));
  }
  static std::vector<T> xi(const DIQuery& q) {
    std::vector<T> out;
    for (double x : q.xi) out.push_back(T(x));
    return out;
  }
  static double mid(const T& x) { return boost::numeric::median(x); }
  static T absval(const T& x) { return boost::numeric::abs(x); }
  static Tri le(const T& a, const T& b) {
    if (a.upper() <= b.lower()) return Tri::True;
    if (a.lower() > b.upper()) return Tri::False;
    return Tri::Unknown;
  }
};

void check_budget(double volume) {
  if (volume > kSearchBudget) throw BudgetExceeded("search budget exceeded");
}

template <class A>
WitnessResult primal_search(const DIQuery& query) {
  using T = typename A::T;
  const int n = query.n();
  const auto xs = A::xi(query);
  const T bound = A::num(query.mu) / A::integer(query.product());
  WitnessResult res;
  std::vector<long long> q(n);
  for (int i = 0; i < n; ++i) q[i] = -query.n_box[i];
  for (;;) {
    // q and -q give the same distance, so keep the first nonzero coordinate positive.
    int first = 0;
    while (first < n && q[first] == 0) ++first;
    if (first < n && q[first] > 0) {
      ++res.search_volume;
      T x = A::integer(0);
      for (int i = 0; i < n; ++i)
        if (q[i] != 0) x += xs[i] * A::integer(q[i]);
      const long long p0 = static_cast<long long>(std::floor(A::mid(x)));
      for (long long p : {p0, p0 + 1}) {
        const Tri t = A::le(A::absval(x - A::integer(p)), bound);
        if (t == Tri::True) {
          res.found = true;
          res.q = q;
          res.p = {p};
          return res;
        }
        if (t == Tri::Unknown) res.undecided = true;
      }
    }
    int k = n - 1;
    while (k >= 0 && q[k] == query.n_box[k]) {
      q[k] = -query.n_box[k];
      --k;
    }
    if (k < 0) break;
    ++q[k];
  }
  return res;
}

template <class A>
WitnessResult dual_search(const DIQuery& query) {
  using T = typename A::T;
  const int n = query.n();
  const auto xs = A::xi(query);
  std::vector<T> bound;
  for (int i = 0; i < n; ++i) bound.push_back(A::num(query.mu) / A::integer(query.n_box[i]));
  WitnessResult res;
  const long long qmax = query.product();
  for (long long q = 1; q <= qmax; ++q) {
    ++res.search_volume;
    Tri all = Tri::True;
    std::vector<long long> p(n);
    for (int i = 0; i < n && all != Tri::False; ++i) {
      const T y = xs[i] * A::integer(q);
      const long long p0 = static_cast<long long>(std::floor(A::mid(y)));
      Tri best = Tri::False;
      for (long long c : {p0, p0 + 1}) {
        const Tri t = A::le(A::absval(y - A::integer(c)), bound[i]);
        if (t > best) {
          best = t;
          p[i] = c;
        }
      }
      all = std::min(all, best);
    }
    if (all == Tri::True) {
      res.found = true;
      res.q = {q};
      res.p = p;
      return res;
    }
    if (all == Tri::Unknown) res.undecided = true;
  }
  return res;
}

}  // namespace

DIQuery DIQuery::primal(std::vector<double> xi, std::vector<long long> n, double mu) {
  return make(Form::Primal, std::move(xi), std::move(n), Rational(mu));
}
DIQuery DIQuery::dual(std::vector<double> xi, std::vector<long long> n, double mu) {
  return make(Form::Dual, std::move(xi), std::move(n), Rational(mu));
}
DIQuery DIQuery::primal_exact(std::vector<Rational> xi, std::vector<long long> n, Rational mu) {
  return make_exact(Form::Primal, std::move(xi), std::move(n), std::move(mu));
}
DIQuery DIQuery::dual_exact(std::vector<Rational> xi, std::vector<long long> n, Rational mu) {
  return make_exact(Form::Dual, std::move(xi), std::move(n), std::move(mu));
}

long long DIQuery::product() const {
  long long p = 1;
  for (long long v : n_box) {
    if (p > std::numeric_limits<long long>::max() / v) throw BudgetExceeded("prod N overflows");
    p *= v;
  }
  return p;
}

void DIQuery::validate() const {
  if (xi.empty()) throw std::invalid_argument("DIQuery: xi is empty");
  if (n_box.size() != xi.size()) throw std::invalid_argument("DIQuery: N and xi differ in length");
  for (long long v : n_box)
    if (v < 1) throw std::invalid_argument("DIQuery: N_i must be >= 1");
  for (double x : xi)
    if (!std::isfinite(x)) throw std::invalid_argument("DIQuery: xi must be finite");
  if (!(mu > 0) || mu > 1) throw std::invalid_argument("DIQuery: mu must lie in (0, 1]");
}

WitnessResult di_witness(const DIQuery& query) {
  query.validate();
  if (query.form != Form::Primal) throw std::invalid_argument("di_witness: query is not primal");
  check_budget(static_cast<double>(query.product()));
  return query.xi_exact ? primal_search<ExactArith>(query) : primal_search<IntervalArith>(query);
}

WitnessResult di_dual_witness(const DIQuery& query) {
  query.validate();
  if (query.form != Form::Dual) throw std::invalid_argument("di_dual_witness: query is not dual");
  check_budget(static_cast<double>(query.product()));
  return query.xi_exact ? dual_search<ExactArith>(query) : dual_search<IntervalArith>(query);
}

WitnessResult witness(const DIQuery& query) {
  return query.form == Form::Primal ? di_witness(query) : di_dual_witness(query);
}

namespace {

template <class A>
bool check_impl(const DIQuery& query, const WitnessResult& w) {
  using T = typename A::T;
  const int n = query.n();
  const auto xs = A::xi(query);
  if (query.form == Form::Primal) {
    if (static_cast<int>(w.q.size()) != n || w.p.size() != 1) return false;
    bool nonzero = false;
    T x = A::integer(0);
    for (int i = 0; i < n; ++i) {
      if (std::llabs(w.q[i]) > query.n_box[i]) return false;
      nonzero = nonzero || w.q[i] != 0;
      x += xs[i] * A::integer(w.q[i]);
    }
    return nonzero && A::le(A::absval(x - A::integer(w.p[0])), A::num(query.mu) / A::integer(query.product())) ==
                          Tri::True;
  }
  if (w.q.size() != 1 || static_cast<int>(w.p.size()) != n) return false;
  if (w.q[0] == 0 || std::llabs(w.q[0]) > query.product()) return false;
  for (int i = 0; i < n; ++i)
    if (A::le(A::absval(xs[i] * A::integer(w.q[0]) - A::integer(w.p[i])),
              A::num(query.mu) / A::integer(query.n_box[i])) != Tri::True)
      return false;
  return true;
}

}  // namespace

bool check_witness(const DIQuery& query, const WitnessResult& w) {
  if (!w.found) return false;
  return query.xi_exact ? check_impl<ExactArith>(query, w) : check_impl<IntervalArith>(query, w);
}

DaniLattice dani_lattice(const DIQuery& query) {
  query.validate();
  const int n = query.n();
  Matrix<double> b = Matrix<double>::identity(n + 1);
  std::vector<double> w(n + 1);
  const double prod = static_cast<double>(query.product());
  const double mu = query.mu.get_d();
  if (query.form == Form::Primal) {
    for (int i = 0; i < n; ++i) {
      b(i + 1, 0) = query.xi[i];
      w[i + 1] = static_cast<double>(query.n_box[i]);
    }
    w[0] = mu / prod;
  } else {
    for (int i = 0; i < n; ++i) {
      b(0, i + 1) = query.xi[i];
      w[i + 1] = mu / static_cast<double>(query.n_box[i]);
    }
    w[0] = prod;
  }
  return {query, latticelab::LatticeBasis::from_rows(b, "dani-" + to_string(query.form)), w};
}

namespace {

template <class A>
WitnessResult box_search(const DaniLattice& lat) {
  using T = typename A::T;
  const DIQuery& query = lat.query;
  const int n = query.n(), m = n + 1;
  const bool primal = query.form == Form::Primal;
  // Exact rows and widths; the double basis only sizes the coefficient box.
  const auto xs = A::xi(query);
  std::vector<std::vector<T>> rows(m, std::vector<T>(m, A::integer(0)));
  for (int i = 0; i < m; ++i) rows[i][i] = A::integer(1);
  for (int i = 0; i < n; ++i) (primal ? rows[i + 1][0] : rows[0][i + 1]) = xs[i];
  std::vector<T> width(m);
  const T prod = A::integer(query.product());
  for (int i = 0; i < n; ++i) width[i + 1] = primal ? A::integer(query.n_box[i]) : A::num(query.mu) / A::integer(query.n_box[i]);
  width[0] = primal ? A::num(query.mu) / prod : prod;

  // Scale the box to the unit cube; its points lie in the ball of radius sqrt(m).
  Matrix<double> scaled = lat.basis.rows;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) scaled(i, k) /= lat.half_widths[k];
  const auto red = latticelab::lll_reduce(latticelab::LatticeBasis{scaled, {}});
  std::vector<std::vector<long long>> pts;
  try {
    pts = latticelab::enumerate_ball(red.basis.rows, std::sqrt(static_cast<double>(m)) * (1 + 1e-9),
                                     static_cast<size_t>(kSearchBudget));
  } catch (const std::length_error&) {
    throw BudgetExceeded("search budget exceeded");
  }

  WitnessResult res;
  std::vector<long long> c(m);
  std::vector<T> x(m);
  for (const auto& cr : pts) {
    ++res.search_volume;
    for (int j = 0; j < m; ++j) {
      double s = 0;
      for (int i = 0; i < m; ++i) s += static_cast<double>(cr[i]) * red.transform(i, j);
      c[j] = std::llround(s);
    }
    bool q_zero = true;
    if (primal) {
      for (int k = 1; k < m; ++k) q_zero = q_zero && c[k] == 0;
    } else {
      q_zero = c[0] == 0;
    }
    if (q_zero) continue;
    for (int k = 0; k < m; ++k) {
      x[k] = A::integer(0);
      for (int j = 0; j < m; ++j)
        if (c[j] != 0) x[k] += A::integer(c[j]) * rows[j][k];
    }
    Tri in = Tri::True;
    for (int k = 0; k < m && in != Tri::False; ++k) in = std::min(in, A::le(A::absval(x[k]), width[k]));
    if (in == Tri::True) {
      res.found = true;
      if (primal) {
        res.q.assign(c.begin() + 1, c.end());
        res.p = {-c[0]};
      } else {
        res.q = {c[0]};
        for (int k = 1; k < m; ++k) res.p.push_back(-c[k]);
      }
      return res;
    }
    if (in == Tri::Unknown) res.undecided = true;
  }
  return res;
}

}  // namespace

WitnessResult box_point_search(const DaniLattice& lattice) {
  return lattice.query.xi_exact ? box_search<ExactArith>(lattice) : box_search<IntervalArith>(lattice);
}

RBar rbar1(const std::vector<std::vector<long long>>& seq) {
  RBar r;
  std::vector<size_t> idx;
  for (size_t i = 0; i < seq.size(); ++i) {
    long double prod = 1, mx = 1;
    for (long long v : seq[i]) {
      if (v < 1) throw std::invalid_argument("rbar1: entries must be >= 1");
      prod *= v;
      mx = std::max(mx, static_cast<long double>(v));
    }
    if (prod < 2) {
      ++r.skipped;
      continue;
    }
    r.ratios.push_back(static_cast<double>(std::log(mx) / std::log(prod)));
    idx.push_back(i);
  }
  if (r.ratios.empty()) throw std::invalid_argument("rbar1: no entry with prod N >= 2");
  const size_t start = r.ratios.size() / 2;
  size_t best = start;
  for (size_t i = start; i < r.ratios.size(); ++i)
    if (r.ratios[i] > r.ratios[best]) best = i;
  r.value = r.ratios[best];
  r.index = idx[best];

  // Exact value when max^b = prod^a for a small denominator b.
  const auto& e = seq[r.index];
  mpz_class mx = 1, prod = 1;
  for (long long v : e) {
    mpz_class z = static_cast<long>(v);
    prod *= z;
    if (z > mx) mx = z;
  }
  for (unsigned long b = 1; b <= 64 && !r.exact; ++b) {
    const unsigned long a = static_cast<unsigned long>(std::lround(r.value * static_cast<double>(b)));
    if (a == 0 || std::fabs(static_cast<double>(a) / b - r.value) > 1e-9) continue;
    mpz_class lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), mx.get_mpz_t(), b);
    mpz_pow_ui(rhs.get_mpz_t(), prod.get_mpz_t(), a);
    if (lhs == rhs) r.exact = make_rational(static_cast<long>(a), static_cast<long>(b));
  }
  return r;
}

namespace {

bool small_rational(double s) {
  for (int d = 1; d <= 64; ++d)
    if (std::fabs(s * d - std::round(s * d)) < 1e-12) return true;
  return false;
}

ScanRow scan_row(const ScanSpec& spec, double s) {
  ScanRow row;
  row.s = s;
  const auto xi = spec.curve.eval(s);
  row.rational_exception = spec.curve.is_polynomial() && small_rational(s);
  row.all_improvable = true;
  for (const auto& n : spec.prefix) {
    for (Form f : {Form::Primal, Form::Dual}) {
      DIQuery q;
      q.form = f;
      q.xi = xi;
      q.n_box = n;
      q.mu = spec.mu;
      int v = -1;
      WitnessResult w;
      try {
        w = witness(q);
        v = w.found ? 1 : 0;
      } catch (const BudgetExceeded&) {
      }
      (f == Form::Primal ? row.primal : row.dual).push_back(v);
      (f == Form::Primal ? row.primal_witness : row.dual_witness).push_back(w);
      row.all_improvable = row.all_improvable && v == 1;
    }
  }
  return row;
}

void check_scan(const ScanSpec& spec) {
  if (spec.grid < 1) throw std::invalid_argument("curve_scan: grid must be positive");
  if (!(spec.lo < spec.hi)) throw std::invalid_argument("curve_scan: empty interval");
  if (spec.prefix.empty()) throw std::invalid_argument("curve_scan: empty N prefix");
  if (!(spec.offset >= 0 && spec.offset < 1)) throw std::invalid_argument("curve_scan: offset must lie in [0, 1)");
  for (const auto& n : spec.prefix)
    if (static_cast<int>(n.size()) != spec.curve.n()) throw std::invalid_argument("curve_scan: N tuple has wrong length");
}

CurveScan aggregate(std::vector<ScanRow> rows) {
  CurveScan out;
  const size_t len = rows.front().primal.size();
  const double g = static_cast<double>(rows.size());
  out.fraction_all.assign(len, 0);
  out.fraction_primal.assign(len, 0);
  out.fraction_dual.assign(len, 0);
  for (const auto& r : rows) {
    bool all = true;
    for (size_t l = 0; l < len; ++l) {
      all = all && r.primal[l] == 1 && r.dual[l] == 1;
      if (all) out.fraction_all[l] += 1;
      if (r.primal[l] == 1) out.fraction_primal[l] += 1;
      if (r.dual[l] == 1) out.fraction_dual[l] += 1;
    }
  }
  for (auto* f : {&out.fraction_all, &out.fraction_primal, &out.fraction_dual})
    for (auto& x : *f) x /= g;
  out.rows = std::move(rows);
  return out;
}

double grid_point(const ScanSpec& spec, int i) { return spec.lo + (spec.hi - spec.lo) * (i + spec.offset) / spec.grid; }

}  // namespace

CurveScan curve_scan(const ScanSpec& spec) {
  check_scan(spec);
  std::vector<ScanRow> rows(spec.grid);
  for (int i = 0; i < spec.grid; ++i) rows[i] = scan_row(spec, grid_point(spec, i));
  return aggregate(std::move(rows));
}

CurveScan curve_scan_parallel(const ScanSpec& spec) {
  check_scan(spec);
  std::vector<ScanRow> rows(spec.grid);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < spec.grid; ++i) rows[i] = scan_row(spec, grid_point(spec, i));
  return aggregate(std::move(rows));
}

nlohmann::json to_json(const WitnessResult& w) {
  return {{"found", w.found}, {"undecided", w.undecided}, {"q", w.q}, {"p", w.p}, {"search_volume", w.search_volume}};
}

nlohmann::json to_json(const RBar& r) {
  nlohmann::json j{{"value", r.value}, {"index", r.index}, {"skipped", r.skipped}};
  j["exact"] = r.exact ? nlohmann::json(horolab::to_string(*r.exact)) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const CurveScan& c) {
  return {{"grid", c.rows.size()},
          {"fraction_all", c.fraction_all},
          {"fraction_primal", c.fraction_primal},
          {"fraction_dual", c.fraction_dual}};
}

}  // namespace horolab::dirichlet
