#include "horolab/flowlab/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "horolab/core/group.hpp"

namespace horolab::flowlab {

using curvejet::CurveFrame;
using curvejet::CurveSpec;
using weightlab::ModulePtr;
using weightlab::ModuleVector;

double Alpha::at(double t) const { return std::exp(rate * t); }

std::string Alpha::name() const {
  if (rate == 0) return "alpha=1";
  std::ostringstream s;
  s << "alpha=exp(" << rate << "t)";
  return s.str();
}

int weight_gap_degree(const ModulePtr& module) {
  const auto ev = weightlab::hc_eigenvalues(module);
  const Rational spread = ev.back() - ev.front();
  if (spread.get_den() != 1) throw std::logic_error("weight_gap_degree: non-integral H_C spread");
  return static_cast<int>(spread.get_num().get_si());
}

std::vector<double> eta_grid(const Interval& j, int uniform_points, int degree) {
  const double lo = to_double(j.lo), hi = to_double(j.hi);
  std::vector<double> g;
  const int m = std::max(uniform_points, 2);
  for (int i = 0; i < m; ++i) g.push_back(lo + (hi - lo) * i / (m - 1));
  for (const auto& x : vandermonde_nodes(std::max(degree, 0), j)) g.push_back(to_double(x));
  const int cheb = std::min(degree + 1, 64);
  for (int i = 0; i < cheb; ++i) {
    const double c = std::cos((2 * i + 1) * std::numbers::pi / (2.0 * cheb));
    g.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * c);
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end(), [&](double a, double b) { return std::fabs(a - b) <= 1e-15 * hi; }), g.end());
  return g;
}

namespace {

void check_interval(const Interval& j) {
  if (!(j.lo > 0) || !(j.hi > j.lo)) throw std::invalid_argument("J must satisfy 0 < lo < hi");
}

int frame_degree(const CurveFrame& frame) { return static_cast<int>(frame.coeff.size()) - 1; }

}  // namespace

std::vector<ExpansionResult> expansion_supremum_batch(const std::vector<ModuleVector>& vs, const FlowSchedule& schedule,
                                             const CurveFrame& frame, double t, const Alpha& alpha,
                                             const Interval& j, int grid) {
  if (vs.empty()) return {};
  const ModulePtr& module = vs.front().module();
  const int n = module->n();
  if (!frame.ordered_regular) throw std::invalid_argument("expansion_supremum: frame is not ordered regular");
  if (frame.n != n || schedule.n() != n) throw std::invalid_argument("expansion_supremum: dimension mismatch");
  if (!alpha.admissible()) throw std::invalid_argument("expansion_supremum: alpha condition violated");
  if (t < 0) throw std::invalid_argument("expansion_supremum: t must be nonnegative");
  check_interval(j);

  const int d = weight_gap_degree(module);
  const int degree = d * std::max(frame_degree(frame), 1);
  const auto etas = eta_grid(j, std::max(grid, 4 * (d + 1)), degree);
  const auto diag = schedule.h_diag(t);
  const int dim = module->dimension();
  std::vector<HiReal> scale(dim);
  for (int i = 0; i < dim; ++i) scale[i] = exp(HiReal(module->weight_of(i).eval_diag(diag)));
  std::vector<std::vector<HiReal>> coords;
  for (const auto& v : vs) coords.push_back(convert<HiReal>(v.coords()));

  std::vector<ExpansionResult> out(vs.size());
  for (auto& r : out) {
    r.t = t;
    r.alpha = alpha.at(t);
    r.degree = degree;
    r.grid_points = static_cast<int>(etas.size());
  }
  const HiReal hscale = exp(HiReal(alpha.rate * t - t));
  for (double eta : etas) {
    const auto rho = module->rho(group::u<HiReal>(frame.taylor_poly(hscale * eta)));
    for (size_t k = 0; k < vs.size(); ++k) {
      const auto w = rho * coords[k];
      HiReal nrm = 0;
      for (int i = 0; i < dim; ++i) nrm = std::max(nrm, HiReal(abs(w[i]) * scale[i]));
      const double m = nrm.convert_to<double>();
      if (m > out[k].m_t) {
        out[k].m_t = m;
        out[k].eta_argmax = eta;
      }
    }
  }
  double gap = 0;
  for (size_t i = 1; i < etas.size(); ++i) gap = std::max(gap, etas[i] - etas[i - 1]);
  const double q = gap * degree * degree / to_double(j.length());
  for (auto& r : out) r.m_upper = q < 1 ? r.m_t / (1 - q) : std::numeric_limits<double>::infinity();
  return out;
}

ExpansionResult expansion_supremum(const ModuleVector& v, const FlowSchedule& schedule, const CurveFrame& frame,
                                   double t, const Alpha& alpha, const Interval& j, int grid) {
  return expansion_supremum_batch({v}, schedule, frame, t, alpha, j, grid).front();
}

D2Certificate certify_d2(const ModulePtr& module, const CurveFrame& frame, const Interval& j, int d1_density) {
  if (!frame.ordered_regular) throw std::invalid_argument("certify_d2: frame is not ordered regular");
  D2Certificate c;
  c.d = weight_gap_degree(module);
  c.vandermonde = vandermonde_constant(c.d, j);
  std::vector<Rational> kappa;
  for (const auto& k : frame.kappa) kappa.push_back(from_double(k.convert_to<double>()));
  c.b = weightlab::hc_eigenvalues(module);
  c.d1 = std::numeric_limits<double>::infinity();
  for (const auto& b : c.b) {
    c.d1_per_b.push_back(weightlab::estimate_D1(module, b, kappa, d1_density));
    c.d1 = std::min(c.d1, c.d1_per_b.back());
  }
  c.d2 = to_double(c.vandermonde.c_used()) * c.d1 / 2;
  return c;
}

GrowthWitness growth_witness(const ModuleVector& v, const FlowSchedule& schedule, const CurveFrame& frame,
                             const Interval& j, const std::vector<double>& ladder, const Alpha& alpha, int grid) {
  GrowthWitness g;
  g.ladder = ladder;
  std::sort(g.ladder.begin(), g.ladder.end());
  for (double t : g.ladder) g.m_t.push_back(expansion_supremum(v, schedule, frame, t, alpha, j, grid).m_t);

  if (g.ladder.size() >= 4) {
    const size_t start = g.ladder.size() / 2;
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (size_t i = start; i < g.m_t.size(); ++i) {
      lo = std::min(lo, g.m_t[i]);
      hi = std::max(hi, g.m_t[i]);
    }
    if (hi == 0) {
      g.verdict = Verdict::Bounded;
    } else if (lo > 0) {
      // Least-squares slope of log M_t over the top half.
      double st = 0, sy = 0, stt = 0, sty = 0;
      const double m = static_cast<double>(g.m_t.size() - start);
      for (size_t i = start; i < g.m_t.size(); ++i) {
        const double y = std::log(g.m_t[i]);
        st += g.ladder[i];
        sy += y;
        stt += g.ladder[i] * g.ladder[i];
        sty += g.ladder[i] * y;
      }
      g.rate = (m * sty - st * sy) / (m * stt - st * st);
      if (hi / lo < 2)
        g.verdict = Verdict::Bounded;
      else if (g.rate > 0)
        g.verdict = Verdict::Divergent;
    }
  }

  const auto cls = classify(schedule, g.ladder.empty() ? 1.0 : std::max(g.ladder.back(), 1.0));
  g.n0 = cls.n0;
  if (g.n0 > 0) {
    const auto sub = alpha.rate == 0 ? weightlab::Subgroup::Q_n0(g.n0) : weightlab::Subgroup::G_n0(g.n0);
    g.subgroup = sub.name();
    g.fixed = weightlab::fixed_check(v, sub);
    g.agrees = (g.verdict == Verdict::Bounded && g.fixed) || (g.verdict == Verdict::Divergent && !g.fixed);
  }
  return g;
}

std::vector<HiReal> qfixed_limit_vector(int n, int n0, const HiReal& kappa, const HiReal& eta) {
  if (n0 < 1 || n0 > n) throw std::invalid_argument("qfixed_limit: need 1 <= n0 <= n");
  if (!(eta > 0)) throw std::invalid_argument("qfixed_limit: eta must be positive");
  std::vector<HiReal> w(n + 1, HiReal(0));
  w[0] = kappa;  // sigma(kappa) e_n and u(kappa e_n) e_n share this entry
  if (n0 < n) w[n] = 1;
  // exp((log eta) H_{n0}) = diag(eta^n, eta^{-n/n0} (n0 times), 1, ...).
  w[0] *= pow(eta, n);
  for (int i = 1; i <= n0; ++i) w[i] *= pow(eta, -HiReal(n) / n0);
  return w;
}

QFixedLimit qfixed_limit(const CurveFrame& frame, const FlowSchedule& schedule, int n0, double eta, double t) {
  const int n = frame.n;
  if (!frame.ordered_regular) throw std::invalid_argument("qfixed_limit: frame is not ordered regular");
  if (schedule.n() != n) throw std::invalid_argument("qfixed_limit: dimension mismatch");
  const HiReal kappa = frame.kappa.at(n - 1);
  if (abs(kappa) < 1e-12) throw std::invalid_argument("qfixed_limit: kappa_n below tolerance");
  QFixedLimit q;
  q.limit = qfixed_limit_vector(n, n0, kappa, eta);
  const auto r = frame.taylor_poly(exp(HiReal(-t)) * eta);
  const auto rs = schedule.r(t);
  q.translate.assign(n + 1, HiReal(0));
  // u(R) e_n = R_n e_0 + e_n, then a_t scales entrywise.
  q.translate[0] = r[n - 1] * exp(HiReal(n * t));
  q.translate[n] = exp(HiReal(-rs[n - 1]));
  HiReal res = 0;
  for (int i = 0; i <= n; ++i) res = std::max(res, HiReal(abs(q.translate[i] - q.limit[i])));
  q.residual = res.convert_to<double>();
  return q;
}

ApproxResidual approx_residual(const CurveSpec& curve, double s, const FlowSchedule& schedule, int k, double t,
                               double eta, const Alpha& alpha) {
  const int n = curve.n();
  if (schedule.n() != n) throw std::invalid_argument("approx_residual: dimension mismatch");
  if (!alpha.admissible()) throw std::invalid_argument("approx_residual: alpha condition violated");
  if (t < 0) throw std::invalid_argument("approx_residual: t must be nonnegative");
  // A polynomial curve of degree <= k has no Taylor remainder, so any k works.
  bool exact_taylor = false;
  if (curve.is_polynomial()) {
    size_t deg = 0;
    for (const auto& c : curve.coefficients()) deg = std::max(deg, c.size() - 1);
    exact_taylor = static_cast<int>(deg) <= k;
  }
  const int need = classify(schedule, std::max(t, 20.0)).k;
  if (k < need && !exact_taylor)
    throw std::invalid_argument("approx_residual: k = " + std::to_string(k) + " too small for the schedule (need " +
                                std::to_string(need) + ")");

  const CurveFrame frame = curvejet::ordered_regular_frame(curve, s, k);
  if (!frame.ordered_regular) throw std::invalid_argument("approx_residual: curve not ordered regular at s");
  ApproxResidual out;
  out.h = alpha.at(t) * std::exp(-t) * eta;
  // The bracket equals a_t u(R B + phi(s)), so the product is u(e^{nt+r_i} (rem B)_i),
  // whose operator norm distance to I is the row-0 sum.
  const auto rem = curvejet::taylor_frame_remainder(curve, frame, out.h);
  const auto rs = schedule.r(t);
  HiReal sum = 0;
  for (int i = 0; i < n; ++i) {
    HiReal y = 0;
    for (int p = 0; p < n; ++p) y += rem[p] * frame.b(p, i);
    sum += abs(y) * exp(HiReal(n * t + rs[i]));
  }
  out.residual = sum.convert_to<double>();
  HiReal sup = 1;
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < n; ++p)
      sup = std::max(sup, HiReal(abs(frame.b(i, p)) * exp(HiReal(rs[p] - rs[i]))));
  out.vt_sup_entry = sup.convert_to<double>();
  return out;
}

nlohmann::json to_json(const FlowClassification& c) {
  auto vs = [](const std::vector<Verdict>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (auto x : v) a.push_back(to_string(x));
    return a;
  };
  return {{"n0", c.n0},         {"determined", c.determined}, {"uniform", c.uniform},
          {"k", c.k},           {"spread", to_string(c.spread)}, {"r", vs(c.r_verdicts)},
          {"xi", vs(c.xi_verdicts)}, {"probes", c.probes},  {"r_values", c.r_values}};
}

nlohmann::json to_json(const VandermondeConstant& c) {
  return {{"d", c.d},
          {"J", {horolab::to_string(c.j.lo), horolab::to_string(c.j.hi)}},
          {"C_certified", horolab::to_string(c.c_certified)},
          {"C_empirical", horolab::to_string(c.c_empirical)},
          {"C_certified_value", to_double(c.c_certified)},
          {"C_empirical_value", to_double(c.c_empirical)},
          {"inverse_row_sum", horolab::to_string(c.inverse_row_sum)},
          {"inverse_max_entry", horolab::to_string(c.inverse_max_entry)},
          {"empirical_dominates", c.empirical_dominates}};
}

nlohmann::json to_json(const ExpansionResult& r) {
  return {{"t", r.t},           {"alpha", r.alpha},   {"M_t", r.m_t},
          {"M_upper", r.m_upper}, {"eta_argmax", r.eta_argmax}, {"degree", r.degree},
          {"grid_points", r.grid_points}};
}

nlohmann::json to_json(const D2Certificate& c) {
  nlohmann::json b = nlohmann::json::array();
  for (const auto& x : c.b) b.push_back(horolab::to_string(x));
  return {{"d", c.d}, {"vandermonde", to_json(c.vandermonde)}, {"b", b}, {"D1_per_b", c.d1_per_b},
          {"D1", c.d1}, {"D2", c.d2}};
}

nlohmann::json to_json(const GrowthWitness& g) {
  return {{"verdict", to_string(g.verdict)}, {"rate", g.rate},   {"ladder", g.ladder}, {"M_t", g.m_t},
          {"subgroup", g.subgroup},          {"n0", g.n0},       {"fixed", g.fixed},   {"agrees", g.agrees}};
}

}  // namespace horolab::flowlab
