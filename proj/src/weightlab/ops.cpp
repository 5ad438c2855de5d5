#include "horolab/weightlab/ops.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "horolab/core/rng.hpp"

namespace horolab::weightlab {

using group::RMat;

ModuleVector act(const RMat& g, const ModuleVector& v) {
  return ModuleVector(v.module(), v.module()->rho(g) * v.coords());
}

std::vector<double> act_real(const Matrix<double>& g, const ModuleVector& v) {
  return v.module()->rho(g) * convert<double>(v.coords());
}

ModuleVector act_lie(const RMat& x, const ModuleVector& v) {
  return ModuleVector(v.module(), v.module()->drho(x) * v.coords());
}

std::map<Weight, ModuleVector> weight_components(const ModuleVector& v) {
  std::map<Weight, ModuleVector> out;
  for (int i = 0; i < v.dimension(); ++i) {
    if (sgn(v.coords()[i]) == 0) continue;
    const Weight& w = v.module()->weight_of(i);
    auto it = out.find(w);
    if (it == out.end()) it = out.emplace(w, ModuleVector::zero(v.module())).first;
    std::vector<Rational> c = it->second.coords();
    c[i] = v.coords()[i];
    it->second = ModuleVector(v.module(), std::move(c));
  }
  return out;
}

std::vector<Weight> weight_support(const ModuleVector& v) {
  std::vector<Weight> out;
  for (const auto& [w, _] : weight_components(v)) out.push_back(w);
  return out;
}

ModuleVector restrict_to(const ModuleVector& v, const std::vector<Weight>& s) {
  std::vector<Rational> c(v.dimension(), Rational(0));
  for (int i = 0; i < v.dimension(); ++i)
    if (std::find(s.begin(), s.end(), v.module()->weight_of(i)) != s.end()) c[i] = v.coords()[i];
  return ModuleVector(v.module(), std::move(c));
}

std::optional<Rational> eigenvalue(const ModuleVector& v, const RMat& h) {
  std::optional<Rational> val;
  for (int i = 0; i < v.dimension(); ++i) {
    if (sgn(v.coords()[i]) == 0) continue;
    Rational e = v.module()->eval(i, h);
    if (val && *val != e) return std::nullopt;
    val = e;
  }
  return val;
}

std::string Subgroup::name() const {
  switch (kind) {
    case Kind::G: return "G";
    case Kind::Gn0: return "G_" + std::to_string(n0);
    case Kind::Q: return "Q";
    case Kind::Qn0: return "Q_" + std::to_string(n0);
    case Kind::SL2: return "sl2(" + std::to_string(i) + ")";
    case Kind::Custom: return "custom";
  }
  return "?";
}

std::vector<RMat> Subgroup::generators(int n) const {
  if (kind == Kind::Custom) return custom;
  std::vector<RMat> gens;
  if (kind == Kind::SL2) {
    if (i < 1 || i > n) throw std::invalid_argument("sl2 subgroup index out of range");
    gens.push_back(RMat::unit(n + 1, 0, i));
    gens.push_back(RMat::unit(n + 1, i, 0));
    gens.push_back(group::A_i(n, i));
    return gens;
  }
  int row_max = n, col_max = n;
  if (kind == Kind::Gn0 || kind == Kind::Qn0) {
    if (n0 < 1 || n0 > n) throw std::invalid_argument("subgroup n0 out of range");
    row_max = n0;
  }
  if (kind == Kind::Q || kind == Kind::Qn0) col_max = n - 1;
  for (int r = 0; r <= row_max; ++r)
    for (int c = 0; c <= col_max; ++c)
      if (r != c) gens.push_back(RMat::unit(n + 1, r, c));
  const int diag_max = std::min(row_max, col_max);
  for (int k = 0; k < diag_max; ++k) {
    RMat h(n + 1, n + 1);
    h(k, k) = 1;
    h(k + 1, k + 1) = -1;
    gens.push_back(h);
  }
  return gens;
}

bool fixed_check(const ModuleVector& v, const Subgroup& h) {
  for (const auto& x : h.generators(v.module()->n()))
    if (!act_lie(x, v).is_zero()) return false;
  return true;
}

bool SSetReport::ok() const {
  if (!(part1 && part2a && part3)) return false;
  return std::all_of(equalities.begin(), equalities.end(), [](const EqualityCheck& e) { return e.fixed; });
}

bool in_delta0plus(const Weight& mu, const Rational& b, int n) {
  const Rational c = mu(group::H_C(n)) - b;
  if (sgn(c) < 0) return false;
  for (int k = 1; k <= n; ++k)
    if (mu(group::H_k(n, k)) - c < 0) return false;
  return true;
}

SSetReport s_sets(const ModuleVector& v, const std::vector<Rational>& x, const SSetOptions& opts) {
  const int n = v.module()->n();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("s_sets: x must have n coordinates");
  for (const auto& xi : x)
    if (sgn(xi) == 0) throw std::invalid_argument("s_sets: all coordinates of x must be nonzero");
  if (v.is_zero()) throw std::invalid_argument("s_sets: v must be nonzero");
  const RMat hc = group::H_C(n);
  auto b = eigenvalue(v, hc);
  if (!b) throw std::invalid_argument("s_sets: v is not an H_C-eigenvector");

  std::vector<RMat> hk;
  for (int k = 1; k <= n; ++k) hk.push_back(group::H_k(n, k));

  SSetReport rep;
  rep.b = *b;
  rep.lambda_support = weight_support(act(group::u(x), v));
  rep.s_k.assign(n, {});
  rep.part1 = true;
  std::map<Weight, Rational> excess;  // mu(H_C) - b
  for (const auto& mu : rep.lambda_support) {
    const Rational c = mu(hc) - rep.b;
    excess[mu] = c;
    if (sgn(c) < 0) rep.part1 = false;
    for (int k = 0; k < n; ++k) {
      const Rational gap = mu(hk[k]) - c;
      if (opts.corrupt_sk ? sgn(gap) > 0 : sgn(gap) >= 0) rep.s_k[k].push_back(mu);
    }
  }
  for (const auto& mu : rep.lambda_support) {
    bool all = true;
    for (int k = 0; k < n; ++k) all = all && std::find(rep.s_k[k].begin(), rep.s_k[k].end(), mu) != rep.s_k[k].end();
    if (all) rep.s.push_back(mu);
  }
  rep.part2a = !rep.s_k[n - 1].empty();
  rep.part3 = !rep.s.empty();

  auto equal_at = [&](const std::vector<Weight>& set, int k) {
    return std::all_of(set.begin(), set.end(), [&](const Weight& mu) { return mu(hk[k - 1]) == excess[mu]; });
  };
  auto hc_flat = [&](const std::vector<Weight>& set) {
    return std::all_of(set.begin(), set.end(), [&](const Weight& mu) { return sgn(excess[mu]) == 0; });
  };

  const auto& sn = rep.s_k[n - 1];
  if (!sn.empty() && equal_at(sn, n) && hc_flat(sn))
    rep.equalities.push_back({"2b", 0, n, "G", fixed_check(v, Subgroup::G())});

  if (!rep.s.empty())
    for (int j = 1; j < n; ++j)
      for (int n0 = j; n0 <= n; ++n0) {
        if (!(equal_at(rep.s, j) && equal_at(rep.s, n0))) continue;
        rep.equalities.push_back({"4a", j, n0, Subgroup::Q_n0(n0).name(), fixed_check(v, Subgroup::Q_n0(n0))});
        if (hc_flat(rep.s))
          rep.equalities.push_back({"4b", j, n0, Subgroup::G_n0(n0).name(), fixed_check(v, Subgroup::G_n0(n0))});
      }
  return rep;
}

namespace {

Rational lambda_max(const ModuleVector& v, const RMat& a) {
  bool first = true;
  Rational best;
  for (int i = 0; i < v.dimension(); ++i) {
    if (sgn(v.coords()[i]) == 0) continue;
    Rational e = v.module()->eval(i, a);
    if (first || e > best) best = e;
    first = false;
  }
  return best;
}

ModuleVector max_component(const ModuleVector& v, const RMat& a, const Rational& lmax) {
  std::vector<Rational> c(v.dimension(), Rational(0));
  for (int i = 0; i < v.dimension(); ++i)
    if (sgn(v.coords()[i]) != 0 && v.module()->eval(i, a) == lmax) c[i] = v.coords()[i];
  return ModuleVector(v.module(), std::move(c));
}

}  // namespace

SL2Report sl2_maxweight_check(int i, const Rational& r, const ModuleVector& v) {
  const int n = v.module()->n();
  if (v.is_zero()) throw std::invalid_argument("sl2_maxweight_check: v must be nonzero");
  if (i < 1 || i > n) throw std::invalid_argument("sl2_maxweight_check: i out of range");
  if (sgn(r) == 0) throw std::invalid_argument("sl2_maxweight_check: r must be nonzero");
  const RMat a = group::A_i(n, i);
  SL2Report rep;
  rep.i = i;
  rep.r = r;
  const ModuleVector uv = act(group::u_r(n, i, r), v);
  rep.lmax_v = lambda_max(v, a);
  rep.lmax_uv = lambda_max(uv, a);
  const Rational sum = rep.lmax_v + rep.lmax_uv;
  rep.inequality = sgn(sum) >= 0;
  rep.equality = sgn(sum) == 0;
  const ModuleVector vmax = max_component(v, a, rep.lmax_v);
  const ModuleVector uvmax = max_component(uv, a, rep.lmax_uv);
  // Equality forces v = u^-(-1/r) v_max; the printed u^-(r) only matches when v_max is u^- fixed.
  const Rational r_inv = Rational(-1) / r;
  const bool form = v == act(group::u_minus_r(n, i, r_inv), vmax) && uvmax == act(group::sigma1(n, i, r), vmax);
  rep.equality_form_ok = rep.equality == form;
  rep.eigenvector = eigenvalue(v, a).has_value();
  if (rep.eigenvector) {
    const bool lower_fixed = act_lie(RMat::unit(n + 1, i, 0), v).is_zero();
    const bool upper_fixed = act_lie(RMat::unit(n + 1, 0, i), v).is_zero();
    const bool sigma_form = uvmax == act(group::sigma1(n, i, r), v);
    rep.part3a_ok = rep.equality == lower_fixed && lower_fixed == sigma_form;
    rep.part3b_ok = (rep.lmax_uv == rep.lmax_v) == upper_fixed;
    const bool both_zero = sgn(rep.lmax_uv) == 0 && sgn(rep.lmax_v) == 0;
    rep.part3c_ok = both_zero == fixed_check(v, Subgroup::sl2(i));
  }
  return rep;
}

bool IdentityReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.pass; });
}

namespace {

RMat random_nilpotent(CounterRng& rng, int n, bool upper) {
  RMat x(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (upper ? i < j : i > j) x(i, j) = rng.rational(5, 4);
  return x;
}

ModuleVector random_vector(CounterRng& rng, const ModulePtr& m) {
  std::vector<Rational> c(m->dimension());
  for (auto& x : c) x = rng.integer(0, 2) == 0 ? Rational(0) : rng.rational(6, 5);
  c[rng.integer(0, m->dimension() - 1)] = rng.nonzero_rational(6, 5);
  return ModuleVector(m, std::move(c));
}

struct Extremum {
  Rational value;
  std::vector<Weight> weights;
  ModuleVector component;
};

Extremum hc_extremum(const ModuleVector& w, bool want_min) {
  const RMat hc = group::H_C(w.module()->n());
  bool first = true;
  Rational best;
  for (int i = 0; i < w.dimension(); ++i) {
    if (sgn(w.coords()[i]) == 0) continue;
    Rational e = w.module()->eval(i, hc);
    if (first || (want_min ? e < best : e > best)) best = e;
    first = false;
  }
  std::vector<Weight> ws;
  std::vector<Rational> c(w.dimension(), Rational(0));
  for (int i = 0; i < w.dimension(); ++i)
    if (sgn(w.coords()[i]) != 0 && w.module()->eval(i, hc) == best) {
      c[i] = w.coords()[i];
      if (std::find(ws.begin(), ws.end(), w.module()->weight_of(i)) == ws.end()) ws.push_back(w.module()->weight_of(i));
    }
  std::sort(ws.begin(), ws.end());
  return {best, ws, ModuleVector(w.module(), std::move(c))};
}

}  // namespace

IdentityReport identity_suite(int n, std::uint64_t seed) {
  if (n < 1 || n > 6) throw std::invalid_argument("identity_suite: n must lie in 1..6");
  IdentityReport rep;
  rep.n = n;
  CounterRng rng(seed, 0x1d + static_cast<std::uint64_t>(n));
  const RMat sig = group::sigma(n);
  const RMat hc = group::H_C(n);

  {
    const RMat lhs = group::u(std::vector<Rational>(n, Rational(1)));
    const RMat rhs = sig * inverse(group::u_plus(n)) * group::u_minus(n);
    rep.results.push_back({"a", "u(1,...,1) = sigma (u+)^-1 u-", lhs == rhs, ""});
  }
  {
    const RMat lhs = group::H_k(n, n) - hc;
    const RMat rhs = -(sig * hc * inverse(sig));
    rep.results.push_back({"b", "H_n - H_C = -sigma H_C sigma^-1", lhs == rhs, ""});
  }
  {
    bool pass = true;
    for (int i = 1; i <= n; ++i) pass = pass && Weight::beta(n, i)(hc) == i;
    for (int trial = 0; trial < 10 && pass; ++trial) {
      const Rational h = make_rational(static_cast<long>(rng.integer(1, 9)), static_cast<long>(rng.integer(1, 9)));
      std::vector<Rational> c(n), r(n);
      for (int i = 0; i < n; ++i) {
        c[i] = rng.rational(7, 5);
        Rational hp = 1;
        for (int p = 0; p <= i; ++p) hp *= h;
        r[i] = c[i] * hp;
      }
      // exp(-log h * H_C) up to a scalar: diag(h^{-(n-k)}).
      std::vector<Rational> d(n + 1);
      for (int k = 0; k <= n; ++k) {
        Rational p = 1;
        for (int q = 0; q < n - k; ++q) p /= h;
        d[k] = p;
      }
      const RMat dm = RMat::diagonal(d);
      pass = dm * group::u(r) * inverse(dm) == group::u(c);
    }
    rep.results.push_back({"c", "exp(sH_C) u(R(h)) exp(-sH_C) = u(c), s = -log h", pass, "beta_i(H_C) = i checked"});
  }
  {
    bool pass = true;
    for (int trial = 0; trial < 10 && pass; ++trial) {
      std::vector<Rational> x(n), y(n), xy(n);
      for (int i = 0; i < n; ++i) {
        x[i] = rng.nonzero_rational(7, 5);
        y[i] = rng.rational(7, 5);
        xy[i] = x[i] * y[i];
      }
      const RMat ax = group::a_x(x);
      const RMat axi = inverse(ax);
      pass = ax * group::u(std::vector<Rational>(n, Rational(1))) * axi == group::u(x) &&
             ax * group::u(y) * axi == group::u(xy) && ax * hc * axi == hc;
    }
    rep.results.push_back({"d", "a_x u(1,...,1) a_x^-1 = u(x)", pass, ""});
  }
  {
    bool pass = true;
    std::string detail;
    if (n >= 2) {
      for (int trial = 0; trial < 10 && pass; ++trial) {
        const Rational kappa = rng.nonzero_rational(7, 5);
        const Rational zeta = rng.rational(7, 5);
        std::vector<Rational> ze(n, Rational(0));
        ze[0] = zeta;
        const RMat sk = group::sigma_kappa(n, kappa);
        pass = sk * group::u(ze) * inverse(sk) == group::u_n1(n, -zeta / kappa);
      }
    } else {
      detail = "not applicable for n = 1";
    }
    rep.results.push_back({"e", "sigma(k) u(z e_1) sigma(k)^-1 = u_{n,1}(-z/k)", pass, detail});
  }
  {
    const RMat xm = -group::log_unipotent(inverse(group::u_minus(n)));
    const RMat ht = group::H_tilde(n);
    RMat y = commutator(ht, xm) * make_rational(-1, n + 1);
    bool pass = true;
    for (int k = 1; k <= n && pass; ++k) {
      if (k > 1) y = commutator(y, xm);
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
          const bool allowed = i == n && j <= n - k;
          if (!allowed && sgn(y(i, j)) != 0) pass = false;
        }
      if (y(n, n - k) != 1) pass = false;
    }
    rep.results.push_back({"f", "Y_k lie in the last-row span with unit (n, n-k) entry", pass, ""});
  }
  {
    bool pass = true;
    int checked = 0;
    std::vector<ModulePtr> mods = {WeightModule::standard(n), WeightModule::exterior(2, n), WeightModule::adjoint(n)};
    for (const auto& m : mods)
      for (int trial = 0; trial < 8 && pass; ++trial) {
        const ModuleVector w = random_vector(rng, m);
        const ModuleVector gp = act(group::exp_nilpotent(random_nilpotent(rng, n, true)), w);
        const ModuleVector gm = act(group::exp_nilpotent(random_nilpotent(rng, n, false)), w);
        const Extremum a = hc_extremum(w, true), b = hc_extremum(gp, true);
        const Extremum c = hc_extremum(w, false), d = hc_extremum(gm, false);
        pass = a.value == b.value && a.weights == b.weights && a.component == b.component && c.value == d.value &&
               c.weights == d.weights && c.component == d.component;
        ++checked;
      }
    rep.results.push_back(
        {"g", "H_C-min under upper and H_C-max under lower unipotents", pass, std::to_string(checked) + " vectors"});
  }
  return rep;
}

std::vector<int> eigenspace_basis(const ModulePtr& module, const RMat& h, const Rational& b) {
  std::vector<int> idx;
  for (int i = 0; i < module->dimension(); ++i)
    if (module->eval(i, h) == b) idx.push_back(i);
  return idx;
}

std::vector<Rational> hc_eigenvalues(const ModulePtr& module) {
  std::set<Rational> vals;
  const RMat hc = group::H_C(module->n());
  for (int i = 0; i < module->dimension(); ++i) vals.insert(module->eval(i, hc));
  return {vals.begin(), vals.end()};
}

double estimate_D1(const ModulePtr& module, const Rational& b, const std::vector<Rational>& x, int grid_density) {
  const int n = module->n();
  const std::vector<int> cols = eigenspace_basis(module, group::H_C(n), b);
  if (cols.empty()) throw std::invalid_argument("estimate_D1: V(b) is zero");
  if (grid_density < 1) throw std::invalid_argument("estimate_D1: grid density must be positive");
  std::vector<int> rows;
  for (int i = 0; i < module->dimension(); ++i)
    if (in_delta0plus(module->weight_of(i), b, n)) rows.push_back(i);
  const RMat full = module->rho(group::u(x));
  const int m = static_cast<int>(cols.size());
  Matrix<double> a(static_cast<int>(rows.size()), m);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < m; ++c) a(static_cast<int>(r), c) = full(rows[r], cols[c]).get_d();

  // Cap the face grid at ~2e5 points.
  int g = grid_density;
  auto count = [&](int gg) {
    double c = 2.0 * m;
    for (int k = 1; k < m; ++k) c *= gg + 1;
    return c;
  };
  while (g > 1 && count(g) > 2e5) --g;

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> v(m);
  std::vector<int> digits(std::max(m - 1, 0));
  for (int face = 0; face < m; ++face)
    for (int sign = -1; sign <= 1; sign += 2) {
      std::fill(digits.begin(), digits.end(), 0);
      for (;;) {
        for (int k = 0, d = 0; k < m; ++k) v[k] = k == face ? sign : -1.0 + 2.0 * digits[d++] / g;
        double nrm = 0;
        for (int r = 0; r < a.rows(); ++r) {
          double s = 0;
          for (int c = 0; c < m; ++c) s += a(r, c) * v[c];
          nrm = std::max(nrm, std::fabs(s));
        }
        best = std::min(best, nrm);
        int p = 0;
        while (p < m - 1 && ++digits[p] > g) digits[p++] = 0;
        if (p == m - 1) break;
      }
    }
  return best;
}

Grading grade_by_Hn0(int n0, const ModuleVector& v) {
  const RMat h = group::H_n0(v.module()->n(), n0);
  std::vector<Rational> p(v.dimension(), Rational(0)), z = p, mi = p;
  for (int i = 0; i < v.dimension(); ++i) {
    const int s = sgn(v.module()->eval(i, h));
    (s > 0 ? p : s < 0 ? mi : z)[i] = v.coords()[i];
  }
  return {ModuleVector(v.module(), p), ModuleVector(v.module(), z), ModuleVector(v.module(), mi)};
}

nlohmann::json to_json(const Weight& w) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& m : w.beta_coeffs()) j.push_back(to_string(m));
  return j;
}

nlohmann::json to_json(const WeightModule& m) {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : m.weights()) ws.push_back(to_json(w));
  return {{"kind", m.name()}, {"n", m.n()}, {"dimension", m.dimension()}, {"basis", m.basis_labels()}, {"weights", ws}};
}

nlohmann::json to_json(const ModuleVector& v) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& x : v.coords()) c.push_back(to_string(x));
  return {{"module", v.module()->name()}, {"n", v.module()->n()}, {"coords", c}};
}

namespace {
nlohmann::json weight_list(const std::vector<Weight>& ws) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& w : ws) j.push_back(to_json(w));
  return j;
}
}  // namespace

nlohmann::json to_json(const SSetReport& r) {
  nlohmann::json sk = nlohmann::json::array();
  for (const auto& s : r.s_k) sk.push_back(weight_list(s));
  nlohmann::json eq = nlohmann::json::array();
  for (const auto& e : r.equalities)
    eq.push_back({{"part", e.part}, {"j", e.j}, {"n0", e.n0}, {"subgroup", e.subgroup}, {"fixed", e.fixed}});
  return {{"b", to_string(r.b)},  {"lambda_support", weight_list(r.lambda_support)},
          {"S_k", sk},            {"S", weight_list(r.s)},
          {"part1", r.part1},     {"part2a", r.part2a},
          {"part3", r.part3},     {"equalities", eq},
          {"ok", r.ok()}};
}

nlohmann::json to_json(const SL2Report& r) {
  return {{"i", r.i},
          {"r", to_string(r.r)},
          {"lambda_max_v", to_string(r.lmax_v)},
          {"lambda_max_uv", to_string(r.lmax_uv)},
          {"inequality", r.inequality},
          {"equality", r.equality},
          {"equality_form_ok", r.equality_form_ok},
          {"eigenvector", r.eigenvector},
          {"part3a_ok", r.part3a_ok},
          {"part3b_ok", r.part3b_ok},
          {"part3c_ok", r.part3c_ok}};
}

nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json res = nlohmann::json::array();
  for (const auto& x : r.results)
    res.push_back({{"id", x.id}, {"statement", x.statement}, {"pass", x.pass}, {"detail", x.detail}});
  return {{"n", r.n}, {"results", res}, {"ok", r.ok()}};
}

}  // namespace horolab::weightlab
