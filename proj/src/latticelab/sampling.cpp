#include "horolab/latticelab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "horolab/core/rng.hpp"

namespace horolab::latticelab {

EmpiricalMeasure EmpiricalMeasure::from_values(std::string observable, std::vector<double> values, int bins) {
  if (bins < 1) throw std::invalid_argument("EmpiricalMeasure: bins must be positive");
  for (double v : values)
    if (!std::isfinite(v)) throw std::domain_error("EmpiricalMeasure: non-finite observable value");
  EmpiricalMeasure m;
  m.observable = std::move(observable);
  std::sort(values.begin(), values.end());
  m.values = std::move(values);
  if (m.values.empty()) return m;
  const double lo = m.values.front();
  const double hi = m.values.back() > lo ? m.values.back() : lo + 1;
  for (int b = 0; b <= bins; ++b) m.edges.push_back(lo + (hi - lo) * b / bins);
  m.masses.assign(bins, 0.0);
  const double w = 1.0 / static_cast<double>(m.values.size());
  for (double v : m.values) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    m.masses[std::clamp(b, 0, bins - 1)] += w;
  }
  return m;
}

double EmpiricalMeasure::mean() const {
  if (values.empty()) throw std::domain_error("EmpiricalMeasure: empty");
  double s = 0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double EmpiricalMeasure::quantile(double q) const {
  if (values.empty()) throw std::domain_error("EmpiricalMeasure: empty");
  const double pos = std::ceil(q * static_cast<double>(values.size())) - 1;
  return values[static_cast<size_t>(std::clamp(pos, 0.0, static_cast<double>(values.size() - 1)))];
}

double EmpiricalMeasure::mass_below(double x) const {
  if (values.empty()) return 0;
  return static_cast<double>(std::lower_bound(values.begin(), values.end(), x) - values.begin()) /
         static_cast<double>(values.size());
}

namespace {

std::vector<double> split_doubles(const std::string& s, char sep) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(std::stod(item));
  return out;
}

}  // namespace

Observable Observable::parse(const std::string& s) {
  if (s == "systole") return {};
  if (s.rfind("inv-systole:", 0) == 0) {
    const double cap = std::stod(s.substr(12));
    if (!(cap > 0)) throw std::invalid_argument("observable: cap must be positive");
    return {Kind::InverseSystole, cap};
  }
  if (s.rfind("indicator:", 0) == 0) return {Kind::Indicator, std::stod(s.substr(10))};
  throw std::invalid_argument("unknown observable '" + s + "'");
}

std::string Observable::name() const {
  std::ostringstream o;
  switch (kind) {
    case Kind::Systole: return "systole";
    case Kind::InverseSystole: o << "inv-systole:" << param; break;
    case Kind::Indicator: o << "indicator:" << param; break;
  }
  return o.str();
}

double Observable::operator()(double sys) const {
  switch (kind) {
    case Kind::Systole: return sys;
    case Kind::InverseSystole: return std::min(1.0 / sys, param);
    case Kind::Indicator: return sys >= param ? 1.0 : 0.0;
  }
  return sys;
}

Sampler Sampler::parse(const std::string& s) {
  Sampler p;
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto interval = [&](const std::string& x) {
    auto v = split_doubles(x, ',');
    if (v.size() != 2 || !(v[0] < v[1])) throw std::invalid_argument("sampler: bad interval '" + x + "'");
    p.lo = v[0];
    p.hi = v[1];
  };
  if (parts.size() == 2 && parts[0] == "uniform") {
    p.kind = Kind::UniformS;
    interval(parts[1]);
  } else if (parts.size() == 3 && parts[0] == "eta") {
    p.kind = Kind::Eta;
    p.s0 = std::stod(parts[1]);
    interval(parts[2]);
  } else if (parts.size() == 4 && parts[0] == "eta-beta") {
    p.kind = Kind::EtaBeta;
    p.s0 = std::stod(parts[1]);
    interval(parts[2]);
    p.beta_rate = std::stod(parts[3]);
    if (!(p.beta_rate >= 0 && p.beta_rate < 1)) throw std::invalid_argument("sampler: beta rate must lie in [0,1)");
  } else {
    throw std::invalid_argument("unknown sampler '" + s + "'");
  }
  return p;
}

std::string Sampler::name() const {
  std::ostringstream o;
  switch (kind) {
    case Kind::UniformS: o << "uniform:" << lo << "," << hi; break;
    case Kind::Eta: o << "eta:" << s0 << ":" << lo << "," << hi; break;
    case Kind::EtaBeta: o << "eta-beta:" << s0 << ":" << lo << "," << hi << ":" << beta_rate; break;
  }
  return o.str();
}

double Sampler::point(double t, std::uint64_t seed, std::uint64_t i) const {
  const double x = lo + (hi - lo) * counter_uniform(seed, 0x5a3, i);
  switch (kind) {
    case Kind::UniformS: return x;
    case Kind::Eta: return s0 + std::exp(-t) * x;
    case Kind::EtaBeta: return s0 + std::exp((beta_rate - 1) * t) * x;
  }
  return x;
}

namespace {

void check_job(const TranslateJob& job) {
  const int n = job.curve.n();
  if (job.schedule.n() != n || job.base.dim() != n + 1) throw std::invalid_argument("translate_sample: dimension mismatch");
  if (job.samples < 1) throw std::invalid_argument("translate_sample: need at least one sample");
  if (job.t < 0) throw std::invalid_argument("translate_sample: t must be nonnegative");
}

double sample_one(const TranslateJob& job, const std::vector<double>& r, std::uint64_t i) {
  const int n = job.curve.n();
  const double s = job.sampler.point(job.t, job.seed, i);
  const auto x = job.curve.eval(s);
  // a_t u(x): row 0 is e^{nt}(1, x), row i is e^{-r_i} e_i.
  Matrix<double> g(n + 1, n + 1);
  const double top = std::exp(n * job.t);
  g(0, 0) = top;
  for (int j = 0; j < n; ++j) {
    g(0, j + 1) = top * x[j];
    g(j + 1, j + 1) = std::exp(-r[j]);
  }
  const double v = job.observable(systole(job.base.translated(g, "a_t u(phi)")));
  if (!std::isfinite(v)) throw std::domain_error("translate_sample: non-finite observable value");
  return v;
}

}  // namespace

EmpiricalMeasure translate_sample(const TranslateJob& job) {
  check_job(job);
  const auto r = job.schedule.r(job.t);
  std::vector<double> vals(job.samples);
  for (int i = 0; i < job.samples; ++i) vals[i] = sample_one(job, r, static_cast<std::uint64_t>(i));
  return EmpiricalMeasure::from_values(job.observable.name(), std::move(vals));
}

EmpiricalMeasure translate_sample_parallel(const TranslateJob& job) {
  check_job(job);
  const auto r = job.schedule.r(job.t);
  std::vector<double> vals(job.samples);
  bool failed = false;
  std::string what;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < job.samples; ++i) {
    try {
      vals[i] = sample_one(job, r, static_cast<std::uint64_t>(i));
    } catch (const std::exception& e) {
#pragma omp critical
      {
        failed = true;
        what = e.what();
      }
    }
  }
  if (failed) throw std::domain_error(what);
  return EmpiricalMeasure::from_values(job.observable.name(), std::move(vals));
}

double consistency_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (a.values.empty() || b.values.empty()) throw std::invalid_argument("consistency_distance: empty sample");
  if (a.observable != b.observable) throw std::invalid_argument("consistency_distance: observables differ");
  const double na = static_cast<double>(a.values.size()), nb = static_cast<double>(b.values.size());
  size_t i = 0, j = 0;
  double d = 0;
  while (i < a.values.size() && j < b.values.size()) {
    const double x = std::min(a.values[i], b.values[j]);
    while (i < a.values.size() && a.values[i] <= x) ++i;
    while (j < b.values.size() && b.values[j] <= x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return d;
}

std::vector<EscapeRow> escape_probe(const std::vector<double>& ladder, double eta, const std::string& rate) {
  const bool fast = rate == "fast";
  if (!fast && rate != "critical") throw std::invalid_argument("escape_probe: rate must be 'fast' or 'critical'");
  std::vector<EscapeRow> out;
  const auto z2 = LatticeBasis::standard(2);
  for (double t : ladder) {
    const double step = fast ? std::exp(-2 * t) : std::exp(-t);
    Matrix<double> g(2, 2);
    g(0, 0) = std::exp(t);
    g(0, 1) = std::exp(t) * step * eta;
    g(1, 1) = std::exp(-t);
    EscapeRow row;
    row.t = t;
    row.systole = systole(z2.translated(g, "a_t u"));
    row.closed_form = fast ? std::exp(-t) * std::sqrt(1 + eta * eta) : std::numeric_limits<double>::quiet_NaN();
    row.rel_error = fast ? std::fabs(row.systole - row.closed_form) / row.closed_form : 0;
    out.push_back(row);
  }
  return out;
}

EmpiricalMeasure unipotent_orbit_oracle(const LatticeBasis& base, double length, int samples,
                                        const Observable& observable) {
  if (samples < 1 || !(length > 0)) throw std::invalid_argument("unipotent_orbit_oracle: bad parameters");
  const int dim = base.dim();
  std::vector<double> vals(samples);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < samples; ++i) {
    Matrix<double> g = Matrix<double>::identity(dim);
    g(0, 1) = length * (i + 0.5) / samples;
    vals[i] = observable(systole(base.translated(g, "u(s)")));
  }
  return EmpiricalMeasure::from_values(observable.name(), std::move(vals));
}

nlohmann::json summary_json(const EmpiricalMeasure& m) {
  nlohmann::json j{{"observable", m.observable}, {"count", m.count()}};
  if (!m.values.empty()) {
    j["mean"] = m.mean();
    j["quantiles"] = {{"0.05", m.quantile(0.05)}, {"0.25", m.quantile(0.25)}, {"0.5", m.quantile(0.5)},
                      {"0.75", m.quantile(0.75)}, {"0.95", m.quantile(0.95)}};
    j["min"] = m.values.front();
    j["max"] = m.values.back();
  }
  return j;
}

}  // namespace horolab::latticelab
