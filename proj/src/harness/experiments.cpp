#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "artifact.hpp"
#include "horolab/core/group.hpp"
#include "horolab/core/rng.hpp"
#include "horolab/curvejet/frame.hpp"
#include "horolab/dirichlet/dirichlet.hpp"
#include "horolab/flowlab/expansion.hpp"
#include "horolab/latticelab/sampling.hpp"
#include "horolab/weightlab/ops.hpp"

namespace horolab::harness::detail {

namespace {

using nlohmann::json;
using weightlab::ModulePtr;
using weightlab::ModuleVector;
using weightlab::WeightModule;

Rational rational_of(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  return from_double(v.get<double>());
}

flowlab::Interval interval_of(const json& v) {
  if (!v.is_array() || v.size() != 2) throw ConfigError({"J must be a two-element array"});
  flowlab::Interval j{rational_of(v[0]), rational_of(v[1])};
  if (!(j.lo < j.hi)) throw ConfigError({"J must satisfy lo < hi"});
  return j;
}

std::vector<double> doubles_of(const json& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get<double>());
  return out;
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = " ") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    if constexpr (std::is_same_v<T, Rational>) s += to_string(v[i]);
    else if constexpr (std::is_floating_point_v<T>) s += num(v[i]);
    else s += std::to_string(v[i]);
  }
  return s;
}

/// Stream id for a (tag, a, b) cell so every cell draws from its own counter stream.
std::uint64_t stream_of(std::uint64_t tag, std::uint64_t a = 0, std::uint64_t b = 0) {
  return counter_hash(tag, a, b);
}

ModuleVector random_eigenvector(CounterRng& rng, const ModulePtr& m, Rational& b) {
  const auto bs = weightlab::hc_eigenvalues(m);
  b = bs[rng.integer(0, static_cast<long long>(bs.size()) - 1)];
  const auto idx = weightlab::eigenspace_basis(m, group::H_C(m->n()), b);
  std::vector<Rational> c(m->dimension(), Rational(0));
  if (rng.uniform() < 0.3) {
    c[idx[rng.integer(0, static_cast<long long>(idx.size()) - 1)]] = rng.nonzero_rational(4, 3);
  } else {
    for (int i : idx) c[i] = rng.rational(4, 3);
    if (std::all_of(idx.begin(), idx.end(), [&](int i) { return is_zero(c[i]); })) c[idx[0]] = 1;
  }
  return ModuleVector(m, std::move(c));
}

ModuleVector random_vector(CounterRng& rng, const ModulePtr& m) {
  std::vector<Rational> c(m->dimension());
  for (auto& x : c) x = rng.rational(4, 3);
  if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return is_zero(x); })) c[0] = 1;
  return ModuleVector(m, std::move(c));
}

// --- identity-suite --------------------------------------------------------

ExperimentOutput identity_suite(const ExperimentConfig& cfg, std::uint64_t seed, const Artifact& art) {
  Csv csv({"n", "id", "statement", "pass", "detail"});
  std::map<std::string, Tally> tallies;
  for (int n : cfg.doc["n_values"].get<std::vector<int>>()) {
    const auto rep = weightlab::identity_suite(n, seed ? seed : 1);
    for (const auto& r : rep.results) {
      csv.row(n, r.id, r.statement, r.pass, r.detail);
      auto it = tallies.try_emplace(r.id, "identity-" + r.id, "identity (" + r.id + "): " + r.statement).first;
      it->second.add(r.pass);
    }
  }
  art.write("identities.csv", csv);
  ExperimentOutput out;
  for (auto& [_, t] : tallies) out.checks.push_back(t.check);
  return out;
}

// --- basic-lemma-fuzz ------------------------------------------------------

ExperimentOutput basic_lemma_fuzz(const ExperimentConfig& cfg, std::uint64_t seed, const Artifact& art) {
  Tally p1("part1", "basic lemma part (1): mu(H_C) - b >= 0 on the support of u(x)v");
  Tally p2a("part2a", "basic lemma part (2a): S_n nonempty");
  Tally p3("part3", "basic lemma part (3): S nonempty");
  Tally eq("equality", "basic lemma parts (2b)/(4a)/(4b): equality cases confirmed by fixed_check");
  Csv csv({"n", "module", "instance", "b", "v", "x", "part1", "part2a", "part3", "equalities", "confirmed"});
  json failures = json::array();
  const weightlab::SSetOptions opts{cfg.doc["corrupt_sk"].get<bool>()};
  const int count = cfg.doc["instances"];
  const auto modules = cfg.doc["modules"].get<std::vector<std::string>>();
  for (int n : cfg.doc["n_values"].get<std::vector<int>>())
    for (size_t mi = 0; mi < modules.size(); ++mi) {
      const auto m = WeightModule::build(modules[mi], n);
      CounterRng rng(seed, stream_of(2, n, mi));
      for (int inst = 0; inst < count; ++inst) {
        Rational b;
        const auto v = random_eigenvector(rng, m, b);
        std::vector<Rational> x(n);
        for (auto& xi : x) xi = rng.nonzero_rational(4, 3);
        const auto rep = weightlab::s_sets(v, x, opts);
        int confirmed = 0;
        for (const auto& e : rep.equalities) confirmed += e.fixed;
        bool ok = p1.add(rep.part1) & p2a.add(rep.part2a) & p3.add(rep.part3);
        for (const auto& e : rep.equalities) ok &= eq.add(e.fixed);
        csv.row(n, m->name(), inst, to_string(b), v.to_string(), join(x), rep.part1, rep.part2a, rep.part3,
                static_cast<int>(rep.equalities.size()), confirmed);
        if (!ok && failures.size() < 20)
          failures.push_back({{"n", n},
                              {"module", m->name()},
                              {"instance", inst},
                              {"v", weightlab::to_json(v)},
                              {"x", json(std::vector<std::string>(x.size()))},
                              {"report", weightlab::to_json(rep)}});
        if (!ok) {
          auto& xs = failures.back()["x"];
          for (size_t i = 0; i < x.size(); ++i) xs[i] = to_string(x[i]);
        }
      }
    }
  art.write("basic_lemma.csv", csv);
  if (!failures.empty()) art.write("failures.json", failures);
  eq.check.detail = std::to_string(eq.check.total) + " equality cases triggered";
  return {{p1.check, p2a.check, p3.check, eq.check}};
}

// --- sl2-lemma -------------------------------------------------------------

ExperimentOutput sl2_lemma(const ExperimentConfig& cfg, std::uint64_t seed, const Artifact& art) {
  Tally ineq("inequality", "SL2 lemma part (1): lambda_max(u(r)v) + lambda_max(v) >= 0");
  Tally eqf("equality-form", "SL2 lemma equality case: v = u^-(-1/r) v_max and (u(r)v)_max = sigma_1(r) v_max");
  Tally p3("part3", "SL2 lemma parts (3a)-(3c) on A_i-eigenvectors");
  Csv csv({"n", "module", "instance", "i", "r", "v", "lmax_v", "lmax_uv", "inequality", "equality", "equality_form",
           "eigenvector", "part3"});
  json failures = json::array();
  const int count = cfg.doc["instances"];
  const auto modules = cfg.doc["modules"].get<std::vector<std::string>>();
  for (int n : cfg.doc["n_values"].get<std::vector<int>>())
    for (size_t mi = 0; mi < modules.size(); ++mi) {
      const auto m = WeightModule::build(modules[mi], n);
      CounterRng rng(seed, stream_of(3, n, mi));
      for (int inst = 0; inst < count; ++inst) {
        const int i = static_cast<int>(rng.integer(1, n));
        const Rational r = rng.nonzero_rational(4, 3);
        // Thirds: basis vectors, generic vectors, and u^-(-1/r) applied to a top-of-string vector,
        // which lands in the equality case without being an A_i-eigenvector.
        const auto e = ModuleVector::basis(m, static_cast<int>(rng.integer(0, m->dimension() - 1)));
        ModuleVector v = e;
        if (inst % 3 == 1) {
          v = random_vector(rng, m);
        } else if (inst % 3 == 2) {
          const auto raise = group::RMat::unit(n + 1, 0, i);
          for (auto up = weightlab::act_lie(raise, v); !up.is_zero(); up = weightlab::act_lie(raise, v)) v = up;
          v = weightlab::act(group::u_minus_r(n, i, Rational(-1) / r), v * rng.nonzero_rational(4, 3));
        }
        const auto rep = weightlab::sl2_maxweight_check(i, r, v);
        const bool part3 = rep.part3a_ok && rep.part3b_ok && rep.part3c_ok;
        bool ok = ineq.add(rep.inequality);
        if (rep.equality) ok &= eqf.add(rep.equality_form_ok);
        if (rep.eigenvector) ok &= p3.add(part3);
        csv.row(n, m->name(), inst, i, to_string(r), v.to_string(), to_string(rep.lmax_v), to_string(rep.lmax_uv),
                rep.inequality, rep.equality, rep.equality_form_ok, rep.eigenvector, part3);
        if (!ok && failures.size() < 20)
          failures.push_back({{"n", n}, {"module", m->name()}, {"i", i}, {"r", to_string(r)},
                              {"v", weightlab::to_json(v)}, {"report", weightlab::to_json(rep)}});
      }
    }
  art.write("sl2_lemma.csv", csv);
  if (!failures.empty()) art.write("failures.json", failures);
  eqf.check.detail = std::to_string(eqf.check.total) + " equality instances";
  Tally any_eq("equality-seen", "SL2 lemma equality case exercised at least once");
  any_eq.add(eqf.check.total > 0);
  return {{ineq.check, eqf.check, p3.check, any_eq.check}};
}

// --- vandermonde -----------------------------------------------------------

ExperimentOutput vandermonde(const ExperimentConfig& cfg, std::uint64_t seed, const Artifact& art) {
  const auto j = interval_of(cfg.doc["J"]);
  const int max_d = cfg.doc["max_degree"], polys = cfg.doc["polynomials"], grid = cfg.doc["grid"];
  const double tol = cfg.doc["tolerance"];
  const double lo = to_double(j.lo), hi = to_double(j.hi), len = hi - lo;
  Tally closed("closed-form", "Vandermonde constant: C_certified = |J|^d / (d^(d+1) (1 + eta_d))");
  Tally bound("lower-bound", "Vandermonde lemma: sup_J |f| >= C_certified max|c_i|");
  Tally rig("empirical-bound", "Vandermonde lemma with C_empirical = 1/(d ||V^-1||)", false);
  Csv consts({"d", "c_certified", "c_certified_double", "closed_form_double", "rel_error", "c_empirical",
              "inverse_row_sum", "inverse_max_entry", "empirical_dominates", "violations", "min_ratio"});
  std::vector<double> grid_pts(grid);
  for (int g = 0; g < grid; ++g) grid_pts[g] = lo + len * g / (grid - 1);
  for (int d = 1; d <= max_d; ++d) {
    const auto vc = flowlab::vandermonde_constant(d, j);
    const double cert = to_double(vc.c_certified), emp = to_double(vc.c_empirical);
    const double closed_form = std::pow(len, d) / (std::pow(double(d), d + 1) * (1 + hi));
    const double rel = std::abs(cert - closed_form) / closed_form;
    closed.add(rel <= tol);
    CounterRng rng(seed, stream_of(4, d));
    int violations = 0;
    double min_ratio = 1e300;
    for (int p = 0; p < polys; ++p) {
      std::vector<double> c(d + 1);
      double cmax = 0;
      for (auto& ci : c) cmax = std::max(cmax, std::abs(ci = rng.uniform(-1, 1)));
      double sup = 0;
      for (double x : grid_pts) {
        double f = 0;
        for (int k = d; k >= 0; --k) f = f * x + c[k];
        sup = std::max(sup, std::abs(f));
      }
      const double ratio = sup / cmax;
      min_ratio = std::min(min_ratio, ratio);
      if (!bound.add(ratio >= cert * (1 - 1e-12))) ++violations;
      rig.add(ratio >= emp * (1 - 1e-12));
    }
    consts.row(d, to_string(vc.c_certified), cert, closed_form, rel, to_string(vc.c_empirical),
               to_string(vc.inverse_row_sum), to_string(vc.inverse_max_entry), vc.empirical_dominates, violations,
               min_ratio);
  }
  art.write("vandermonde.csv", consts);
  return {{closed.check, bound.check, rig.check}};
}

// --- curve-frames ----------------------------------------------------------

ExperimentOutput curve_frames(const ExperimentConfig& cfg, std::uint64_t, const Artifact& art) {
  const auto curve = curvejet::CurveSpec::parse(cfg.doc["curve"]);
  const auto iv = doubles_of(cfg.doc["interval"]);
  int k = cfg.doc["k"];
  if (k <= 0) k = curve.n();
  const auto scan = curvejet::regularity_scan(curve, iv.at(0), iv.at(1), cfg.doc["grid"], k);
  Csv reg({"s", "ordered_regular"});
  for (double s : scan.grid)
    reg.row(s, std::find(scan.failures.begin(), scan.failures.end(), s) == scan.failures.end());
  art.write("regularity.csv", reg);

  Tally regular("frames", "ordered-regular frame exists at the sample points");
  Tally shrink("remainder", "Taylor frame remainder shrinks faster than h^k");
  Csv frames({"s", "ordered_regular", "kappa", "h", "remainder_sup"});
  for (double s : doubles_of(cfg.doc["s_values"])) {
    const auto f = curvejet::ordered_regular_frame(curve, s, k);
    regular.add(f.ordered_regular);
    if (!f.ordered_regular) continue;
    std::vector<double> kappa;
    for (const auto& x : f.kappa) kappa.push_back(static_cast<double>(x));
    double prev = 0;
    bool ok = true;
    for (int e = 1; e <= 4; ++e) {
      const double h = std::pow(10.0, -e);
      double sup = 0;
      for (const auto& r : curvejet::taylor_frame_remainder(curve, f, h)) sup = std::max(sup, std::abs(double(r)));
      frames.row(s, true, join(kappa), h, sup);
      if (e > 1 && prev > 1e-30) ok &= sup <= prev * std::pow(10.0, -k) * 10;
      prev = sup;
    }
    shrink.add(ok);
  }
  art.write("frames.csv", frames);
  Check clusters{"clusters", "regularity scan: failing points form isolated clusters", 1, 1, false,
                 std::to_string(scan.clusters.size()) + " clusters"};
  return {{regular.check, shrink.check, clusters}};
}

// --- expansion-ladder ------------------------------------------------------

double log_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const double n = static_cast<double>(t.size());
  const double mt = std::accumulate(t.begin(), t.end(), 0.0) / n;
  double my = 0;
  for (double v : y) my += std::log(v);
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    sxy += (t[i] - mt) * (std::log(y[i]) - my);
    sxx += (t[i] - mt) * (t[i] - mt);
  }
  return sxy / sxx;
}

ExperimentOutput expansion_ladder(const ExperimentConfig& cfg, std::uint64_t seed, const Artifact& art) {
  const auto j = interval_of(cfg.doc["J"]);
  const auto ladder = doubles_of(cfg.doc["t_values"]);
  const auto modules = cfg.doc["modules"].get<std::vector<std::string>>();
  const double s0 = cfg.doc["s0"], floor = cfg.doc["slope_floor"];
  const int count = cfg.doc["vectors"], grid = cfg.doc["grid"], density = cfg.doc["d1_density"];
  Tally lower("inf-vs-D2", "expansion lemma: inf over unit v of M_t >= D_2");
  Tally slope("log-slope", "expansion lemma: log-infimum slope in t >= " + num(floor));
  Tally markov("grid-bound", "grid maximum within the Markov bound", false);
  Csv csv({"n", "schedule", "module", "t", "inf_m_t", "max_m_t", "d2", "vandermonde_c", "d1"});
  Csv slopes({"n", "schedule", "module", "log_slope"});
  for (const auto& [nkey, scheds] : cfg.doc["schedules"].items()) {
    const int n = std::stoi(nkey);
    const auto frame = curvejet::ordered_regular_frame(curvejet::CurveSpec::moment(n), s0, 2 * n);
    for (const auto& preset : scheds.get<std::vector<std::string>>()) {
      const auto schedule = flowlab::FlowSchedule::parse(preset, n);
      for (size_t mi = 0; mi < modules.size(); ++mi) {
        const auto m = WeightModule::build(modules[mi], n);
        const auto cert = flowlab::certify_d2(m, frame, j, density);
        CounterRng rng(seed, stream_of(5, n, mi));
        std::vector<ModuleVector> vs;
        for (int k = 0; k < count; ++k) {
          auto v = random_vector(rng, m);
          vs.push_back(v * (Rational(1) / v.norm()));
        }
        std::vector<double> infs;
        for (double t : ladder) {
          const auto res = flowlab::expansion_supremum_batch(vs, schedule, frame, t, flowlab::Alpha{}, j, grid);
          double inf = 1e300, sup = 0;
          for (const auto& r : res) {
            inf = std::min(inf, r.m_t);
            sup = std::max(sup, r.m_t);
            markov.add(r.m_t <= r.m_upper);
          }
          infs.push_back(inf);
          lower.add(inf >= cert.d2);
          csv.row(n, schedule.name(), m->name(), t, inf, sup, cert.d2, to_string(cert.vandermonde.c_used()), cert.d1);
        }
        const double sl = log_slope(ladder, infs);
        slope.add(sl >= floor);
        slopes.row(n, schedule.name(), m->name(), sl);
      }
    }
  }
  art.write("expansion.csv", csv);
  art.write("expansion_slopes.csv", slopes);
  return {{lower.check, slope.check, markov.check}};
}

// --- growth-consistency ----------------------------------------------------

ExperimentOutput growth_consistency(const ExperimentConfig& cfg, std::uint64_t, const Artifact& art) {
  const int n = cfg.doc["n"];
  const auto schedule = flowlab::FlowSchedule::parse(cfg.doc["schedule"], n);
  const auto j = interval_of(cfg.doc["J"]);
  const auto ladder = doubles_of(cfg.doc["ladder"]);
  const int grid = cfg.doc["grid"];
  const auto frame = curvejet::ordered_regular_frame(curvejet::CurveSpec::moment(n), cfg.doc["s0"], 2 * n);

  struct Witness {
    ModuleVector v;
    double rate;
    std::string origin;
  };
  std::vector<Witness> ws;
  for (const auto& w : cfg.doc["witnesses"]) {
    const auto m = WeightModule::build(w.at("module").get<std::string>(), n);
    std::vector<Rational> c;
    for (const auto& x : w.at("coords")) c.push_back(rational_of(x));
    if (static_cast<int>(c.size()) != m->dimension())
      throw ConfigError({"witness coords for " + m->name() + " need " + std::to_string(m->dimension()) + " entries"});
    ws.push_back({ModuleVector(m, c), w.value("alpha_rate", 0.0), "curated"});
  }
  for (const auto& name : cfg.doc["basis_modules"].get<std::vector<std::string>>()) {
    const auto m = WeightModule::build(name, n);
    for (double rate : doubles_of(cfg.doc["alpha_rates"]))
      for (int i = 0; i < m->dimension(); ++i) ws.push_back({ModuleVector::basis(m, i), rate, "basis"});
  }

  Tally agree("agreement", "bounded iff fixed: growth verdict agrees with fixed_check");
  Tally fixed_seen("fixed-present", "witness set contains fixed vectors", false);
  Tally moving_seen("moving-present", "witness set contains non-fixed vectors", false);
  Csv csv({"origin", "module", "v", "alpha", "subgroup", "verdict", "rate", "fixed", "agrees", "m_t"});
  int nf = 0, nm = 0;
  for (const auto& w : ws) {
    const flowlab::Alpha alpha{w.rate};
    const auto g = flowlab::growth_witness(w.v, schedule, frame, j, ladder, alpha, grid);
    agree.add(g.agrees);
    (g.fixed ? nf : nm)++;
    csv.row(w.origin, w.v.module()->name(), w.v.to_string(), alpha.name(), g.subgroup, flowlab::to_string(g.verdict),
            g.rate, g.fixed, g.agrees, join(g.m_t));
  }
  fixed_seen.add(nf > 0);
  moving_seen.add(nm > 0);
  fixed_seen.check.detail = std::to_string(nf) + " fixed";
  moving_seen.check.detail = std::to_string(nm) + " non-fixed";
  art.write("growth.csv", csv);
  return {{agree.check, fixed_seen.check, moving_seen.check}};
}

// --- qfixed-limit ----------------------------------------------------------

ExperimentOutput qfixed_limit(const ExperimentConfig& cfg, std::uint64_t, const Artifact& art) {
  Tally gate("limit", "Q-fixed limit lemma: residual at the final time below tolerance");
  Tally info("limit-informational", "Q-fixed limit lemma: informational schedules", false);
  Csv csv({"schedule", "n0", "curve", "s0", "eta", "t", "residual", "tolerance", "gating", "pass", "limit"});
  for (const auto& c : cfg.doc["cases"]) {
    const auto curve = curvejet::CurveSpec::parse(c.at("curve").get<std::string>());
    const int n = curve.n();
    const auto schedule = flowlab::FlowSchedule::parse(c.at("schedule").get<std::string>(), n);
    const int n0 = c.at("n0");
    const double s0 = c.at("s0"), eta = c.at("eta"), t = c.at("t"), tol = c.at("tolerance");
    const bool gating = c.value("gating", true);
    const auto frame = curvejet::ordered_regular_frame(curve, s0, 2 * n);
    const auto q = flowlab::qfixed_limit(frame, schedule, n0, eta, t);
    const bool ok = q.residual < tol;
    (gating ? gate : info).add(ok);
    std::vector<double> lim;
    for (const auto& x : q.limit) lim.push_back(static_cast<double>(x));
    csv.row(schedule.name(), n0, curve.name(), s0, eta, t, q.residual, tol, gating, ok, join(lim));
    if (!gating) info.check.detail += schedule.name() + " residual " + num(q.residual) + "; ";
  }
  const auto& cf = cfg.doc["closed_form"];
  const auto w = flowlab::qfixed_limit_vector(cf.at("n"), cf.at("n0"), HiReal(cf.at("kappa").get<double>()),
                                              HiReal(cf.at("eta").get<double>()));
  const auto expected = doubles_of(cf.at("expected"));
  double err = expected.size() == w.size() ? 0 : 1e300;
  std::vector<double> got;
  for (size_t i = 0; i < w.size(); ++i) {
    got.push_back(static_cast<double>(w[i]));
    if (i < expected.size()) err = std::max(err, std::abs(got.back() - expected[i]));
  }
  Tally closed("closed-form", "Q-fixed limit closed form exp((log eta) H_n0) sigma(kappa) e_n");
  closed.add(err <= cf.at("tolerance").get<double>());
  closed.check.detail = "got (" + join(got) + "), max error " + num(err);
  csv.row("closed-form", cf.at("n0").get<int>(), "-", 0.0, cf.at("eta").get<double>(), 0.0, err,
          cf.at("tolerance").get<double>(), true, closed.check.pass(), join(got));
  art.write("qfixed.csv", csv);
  return {{gate.check, closed.check, info.check}};
}

// --- equidistribution ------------------------------------------------------

ExperimentOutput equidistribution(const ExperimentConfig& cfg, std::uint64_t seed, const Artifact& art) {
  const auto curve = curvejet::CurveSpec::parse(cfg.doc["curve"]);
  const int n = curve.n();
  const auto bases = cfg.doc["bases"].get<std::vector<std::string>>();
  if (bases.size() != 2) throw ConfigError({"'bases' must name exactly two catalog bases"});
  const auto obs = latticelab::Observable::parse(cfg.doc["observable"]);
  const int samples = cfg.doc["samples"];
  std::vector<latticelab::EmpiricalMeasure> ms;
  Tally par("serial-parallel", "parallel sampler reproduces the serial reference bitwise");
  for (size_t b = 0; b < 2; ++b) {
    latticelab::TranslateJob job{curve,
                                 flowlab::FlowSchedule::parse(cfg.doc["schedule"], n),
                                 latticelab::catalog_basis(bases[b], n + 1),
                                 latticelab::Sampler::parse(cfg.doc["sampler"]),
                                 obs,
                                 cfg.doc["t"],
                                 samples,
                                 counter_hash(seed, 8, b)};
    ms.push_back(latticelab::translate_sample_parallel(job));
    if (b == 0) par.add(latticelab::translate_sample(job).values == ms[0].values);
  }
  const auto oracle = latticelab::unipotent_orbit_oracle(latticelab::catalog_basis(cfg.doc["oracle_base"], n + 1),
                                                         std::exp(cfg.doc["oracle_log_length"].get<double>()),
                                                         samples, obs);
  const double ks = latticelab::consistency_distance(ms[0], ms[1]);
  const double ks_a = latticelab::consistency_distance(ms[0], oracle);
  const double ks_b = latticelab::consistency_distance(ms[1], oracle);
  const double thr = cfg.doc["ks_threshold"], othr = cfg.doc["oracle_threshold"];
  Tally cross("ks-bases", "equidistribution: KS between translates of two base points < " + num(thr));
  Tally orc("ks-oracle", "equidistribution: KS to the long unipotent orbit < " + num(othr));
  cross.add(ks < thr);
  orc.add(ks_a < othr);
  orc.add(ks_b < othr);
  cross.check.detail = "KS " + num(ks);
  orc.check.detail = "KS " + num(ks_a) + ", " + num(ks_b);

  Csv kcsv({"pair", "ks", "threshold"});
  kcsv.row(bases[0] + " vs " + bases[1], ks, thr);
  kcsv.row(bases[0] + " vs oracle", ks_a, othr);
  kcsv.row(bases[1] + " vs oracle", ks_b, othr);
  art.write("ks.csv", kcsv);
  Csv q({"quantile", bases[0], bases[1], "oracle"});
  for (int p = 0; p <= 100; ++p)
    q.row(p / 100.0, ms[0].quantile(p / 100.0), ms[1].quantile(p / 100.0), oracle.quantile(p / 100.0));
  art.write("quantiles.csv", q);
  return {{cross.check, orc.check, par.check}};
}

// --- escape ----------------------------------------------------------------

ExperimentOutput escape(const ExperimentConfig& cfg, std::uint64_t, const Artifact& art) {
  const auto ladder = doubles_of(cfg.doc["ladder"]);
  const double eta = cfg.doc["eta"], tol = cfg.doc["tolerance"], floor = cfg.doc["contrast_floor"];
  const auto fast = latticelab::escape_probe(ladder, eta, "fast");
  const auto crit = latticelab::escape_probe(ladder, eta, "critical");
  Tally closed("closed-form", "escape scenario: systole = e^-t sqrt(1 + eta^2) to " + num(tol) + " relative");
  Tally contrast("contrast", "critical rate: systole minimum stays above " + num(floor));
  Csv csv({"rate", "t", "systole", "closed_form", "rel_error"});
  double worst = 0, min_sys = 1e300;
  for (const auto& r : fast) {
    closed.add(r.rel_error <= tol);
    worst = std::max(worst, r.rel_error);
    csv.row("fast", r.t, r.systole, r.closed_form, r.rel_error);
  }
  for (const auto& r : crit) {
    min_sys = std::min(min_sys, r.systole);
    csv.row("critical", r.t, r.systole, "", "");
  }
  contrast.add(min_sys > floor);
  closed.check.detail = "max relative error " + num(worst);
  contrast.check.detail = "minimum " + num(min_sys);
  art.write("escape.csv", csv);
  return {{closed.check, contrast.check}};
}

// --- dirichlet-scan --------------------------------------------------------

std::string witness_text(const dirichlet::WitnessResult& w) {
  if (!w.found) return "";
  return "q=" + join(w.q) + ";p=" + join(w.p);
}

ExperimentOutput dirichlet_scan(const ExperimentConfig& cfg, std::uint64_t seed, const Artifact& art) {
  using dirichlet::DIQuery;
  const int max_n = cfg.doc["max_n"], max_N = cfg.doc["max_N"];
  const auto mus = doubles_of(cfg.doc["mus"]);
  auto random_query = [&](CounterRng& rng, dirichlet::Form form, double mu) {
    const int n = static_cast<int>(rng.integer(1, max_n));
    std::vector<double> xi(n);
    std::vector<long long> nb(n);
    for (auto& x : xi) x = rng.uniform();
    for (auto& b : nb) b = rng.integer(1, max_N);
    return form == dirichlet::Form::Primal ? DIQuery::primal(xi, nb, mu) : DIQuery::dual(xi, nb, mu);
  };
  Csv qcsv({"suite", "index", "form", "n", "N", "mu", "xi", "found", "witness", "lattice_found", "pass"});
  auto log = [&](const char* suite, int i, const DIQuery& q, const dirichlet::WitnessResult& w, int lattice, bool ok) {
    qcsv.row(suite, i, dirichlet::to_string(q.form), q.n(), join(q.n_box), to_string(q.mu), join(q.xi), w.found,
             witness_text(w), lattice, ok);
  };

  Tally eqv("equivalence", "Dani correspondence: primal search and lattice box search agree");
  Tally eqv_dual("equivalence-dual", "Dani correspondence (dual form): search and lattice box search agree");
  const int ne = cfg.doc["equivalence_queries"];
  CounterRng re(seed, stream_of(10, 1));
  for (int i = 0; i < ne; ++i)
    for (auto form : {dirichlet::Form::Primal, dirichlet::Form::Dual}) {
      const auto q = random_query(re, form, mus[re.integer(0, static_cast<long long>(mus.size()) - 1)]);
      const auto w = dirichlet::witness(q);
      const auto l = dirichlet::box_point_search(dirichlet::dani_lattice(q));
      const bool ok = w.found == l.found && !w.undecided && !l.undecided;
      (form == dirichlet::Form::Primal ? eqv : eqv_dual).add(ok);
      log("equivalence", i, q, w, l.found, ok);
    }

  Tally comp("completeness", "Dirichlet's theorem: DI(N, 1) is everything (primal)");
  Tally comp_dual("completeness-dual", "Dirichlet's theorem: DI'(N, 1) is everything (dual)");
  const int nc = cfg.doc["completeness_queries"];
  CounterRng rc(seed, stream_of(10, 2));
  for (int i = 0; i < nc; ++i)
    for (auto form : {dirichlet::Form::Primal, dirichlet::Form::Dual}) {
      const auto q = random_query(rc, form, 1.0);
      const auto w = dirichlet::witness(q);
      const bool ok = w.found && dirichlet::check_witness(q, w);
      (form == dirichlet::Form::Primal ? comp : comp_dual).add(ok);
      log("completeness", i, q, w, -1, ok);
    }

  Tally mono("monotone", "mu-monotonicity: a witness for mu is a witness for every larger mu");
  const int nm = cfg.doc["monotone_queries"];
  CounterRng rm(seed, stream_of(10, 3));
  for (int i = 0; i < nm; ++i) {
    const auto form = i % 2 ? dirichlet::Form::Dual : dirichlet::Form::Primal;
    const double a = rm.uniform(0.05, 1.0), b = rm.uniform(0.05, 1.0);
    auto q = random_query(rm, form, std::min(a, b));
    const auto w_small = dirichlet::witness(q);
    q.mu = from_double(std::max(a, b));
    const auto w_large = dirichlet::witness(q);
    const bool ok = !w_small.found || (w_large.found && dirichlet::check_witness(q, w_small));
    mono.add(ok);
    log("monotone", i, q, w_large, w_small.found, ok);
  }
  art.write("dirichlet_queries.csv", qcsv);

  Tally rb("rbar", "rbar_1 examples: 1/2 for (2^k, 2^k) and 2/3 for (4^k, 2^k)");
  Csv rcsv({"sequence", "value", "exact", "expected"});
  std::vector<std::vector<long long>> a, b;
  for (int k = 1; k <= 20; ++k) {
    a.push_back({1LL << k, 1LL << k});
    b.push_back({1LL << (2 * k), 1LL << k});
  }
  for (const auto& [name, seq, want] :
       {std::tuple{"(2^k,2^k)", a, make_rational(1, 2)}, std::tuple{"(4^k,2^k)", b, make_rational(2, 3)}}) {
    const auto r = dirichlet::rbar1(seq);
    rb.add(r.exact && *r.exact == want);
    rcsv.row(name, r.value, r.exact ? to_string(*r.exact) : std::string(), to_string(want));
  }
  art.write("rbar.csv", rcsv);

  dirichlet::ScanSpec spec;
  spec.curve = curvejet::CurveSpec::parse(cfg.doc["scan_curve"]);
  const auto iv = doubles_of(cfg.doc["scan_interval"]);
  spec.lo = iv.at(0);
  spec.hi = iv.at(1);
  spec.mu = parse_rational(cfg.doc["scan_mu"].get<std::string>());
  spec.grid = cfg.doc["scan_grid"];
  spec.offset = cfg.doc["scan_offset"];
  for (int k = 1; k <= cfg.doc["scan_max_k"].get<int>(); ++k)
    spec.prefix.push_back(std::vector<long long>(spec.curve.n(), 1LL << k));
  const auto scan = dirichlet::curve_scan_parallel(spec);
  Csv scsv({"s", "N_index", "form", "found", "witness", "search_volume"});
  for (const auto& row : scan.rows)
    for (size_t l = 0; l < spec.prefix.size(); ++l) {
      scsv.row(row.s, l + 1, "primal", row.primal[l], witness_text(row.primal_witness[l]),
               row.primal_witness[l].search_volume);
      scsv.row(row.s, l + 1, "dual", row.dual[l], witness_text(row.dual_witness[l]),
               row.dual_witness[l].search_volume);
    }
  art.write("scan.csv", scsv);
  Csv fcsv({"prefix_length", "N", "fraction_all", "fraction_primal", "fraction_dual"});
  for (size_t l = 0; l < spec.prefix.size(); ++l)
    fcsv.row(l + 1, join(spec.prefix[l]), scan.fraction_all[l], scan.fraction_primal[l], scan.fraction_dual[l]);
  art.write("scan_fractions.csv", fcsv);
  const double thr = cfg.doc["scan_threshold"];
  Tally sc("scan", "curve scan: all-improvable fraction at the full prefix < " + num(thr));
  sc.add(scan.fraction_all.back() < thr);
  sc.check.detail = "fraction " + num(scan.fraction_all.back());
  const auto flagged = std::count_if(scan.rows.begin(), scan.rows.end(), [](const auto& r) { return r.rational_exception; });
  sc.check.detail += ", " + std::to_string(flagged) + " rational exceptions on the grid";
  return {{eqv.check, eqv_dual.check, comp.check, comp_dual.check, mono.check, rb.check, sc.check}};
}

}  // namespace

ExperimentFn experiment_for(const std::string& kind) {
  static const std::map<std::string, ExperimentFn> table = {
      {"identity-suite", identity_suite},   {"basic-lemma-fuzz", basic_lemma_fuzz},
      {"sl2-lemma", sl2_lemma},             {"vandermonde", vandermonde},
      {"curve-frames", curve_frames},       {"expansion-ladder", expansion_ladder},
      {"growth-consistency", growth_consistency}, {"qfixed-limit", qfixed_limit},
      {"equidistribution", equidistribution}, {"escape", escape},
      {"dirichlet-scan", dirichlet_scan},
  };
  auto it = table.find(kind);
  if (it == table.end()) throw ConfigError({"no experiment registered for kind '" + kind + "'"});
  return it->second;
}

}  // namespace horolab::harness::detail
