#include "horolab/flowlab/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace horolab::flowlab {

namespace {
constexpr double kRel = 1e-12;
}

FlowSchedule FlowSchedule::equal(int n) {
  return custom("equal", n, [n](double t) { return std::vector<double>(n, t); });
}

FlowSchedule FlowSchedule::linear(std::vector<double> c) {
  const int n = static_cast<int>(c.size());
  if (n < 1) throw std::invalid_argument("linear schedule: no slopes");
  for (int i = 0; i < n; ++i) {
    if (c[i] < 0) throw std::invalid_argument("linear schedule: slopes must be nonnegative");
    if (i > 0 && c[i] > c[i - 1]) throw std::invalid_argument("linear schedule: slopes must be nonincreasing");
  }
  const double sum = std::accumulate(c.begin(), c.end(), 0.0);
  if (std::fabs(sum - n) > kRel * n) throw std::invalid_argument("linear schedule: slopes must sum to n");
  std::ostringstream name;
  name << "linear:";
  for (int i = 0; i < n; ++i) name << (i ? "," : "") << c[i];
  return custom(name.str(), n, [c](double t) {
    std::vector<double> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = c[i] * t;
    return r;
  });
}

FlowSchedule FlowSchedule::sublinear_tail(int n) {
  if (n < 2) throw std::invalid_argument("sublinear-tail schedule needs n >= 2");
  return custom("sublinear-tail", n, [n](double t) {
    const double tail = std::min(t, std::sqrt(t));
    std::vector<double> r(n, (n * t - tail) / (n - 1));
    r[n - 1] = tail;
    return r;
  });
}

FlowSchedule FlowSchedule::custom(std::string name, int n, Fn r) {
  if (n < 1) throw std::invalid_argument("schedule: n must be >= 1");
  FlowSchedule s;
  s.name_ = std::move(name);
  s.n_ = n;
  s.fn_ = std::move(r);
  return s;
}

FlowSchedule FlowSchedule::parse(const std::string& preset, int n) {
  if (preset == "equal") return equal(n);
  if (preset == "sublinear-tail") return sublinear_tail(n);
  if (preset.rfind("linear:", 0) == 0) {
    std::vector<double> c;
    std::stringstream ss(preset.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(std::stod(item));
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("linear schedule: expected n slopes");
    return linear(std::move(c));
  }
  throw std::invalid_argument("unknown schedule preset '" + preset + "'");
}

std::vector<double> FlowSchedule::r(double t) const {
  if (t < 0) throw std::invalid_argument("schedule: t must be nonnegative");
  std::vector<double> r = fn_(t);
  if (static_cast<int>(r.size()) != n_) throw std::logic_error("schedule: wrong exponent count");
  const double scale = std::max(1.0, n_ * t);
  for (int i = 0; i < n_; ++i) {
    if (r[i] < -kRel * scale) throw std::domain_error("schedule '" + name_ + "': negative exponent");
    if (i > 0 && r[i] > r[i - 1] + kRel * scale) throw std::domain_error("schedule '" + name_ + "': exponents not ordered");
  }
  const double sum = std::accumulate(r.begin(), r.end(), 0.0);
  if (std::fabs(sum - n_ * t) > kRel * scale) throw std::domain_error("schedule '" + name_ + "': exponents do not sum to nt");
  return r;
}

std::vector<double> FlowSchedule::h_diag(double t) const {
  auto r = this->r(t);
  std::vector<double> d{n_ * t};
  for (double x : r) d.push_back(-x);
  return d;
}

std::vector<double> xi_coefficients(const FlowSchedule& s, double t) {
  const int n = s.n();
  const auto r = s.r(t);
  std::vector<double> xi(n);
  for (int i = 1; i < n; ++i) xi[i - 1] = static_cast<double>(i) / n * (r[i - 1] - r[i]);
  xi[n - 1] = r[n - 1];
  return xi;
}

std::vector<double> h_xi(int n, const std::vector<double>& xi) {
  std::vector<double> d(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    d[0] += xi[k - 1] * n;
    for (int i = 1; i <= k; ++i) d[i] -= xi[k - 1] * n / k;
  }
  return d;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Divergent: return "divergent";
    case Verdict::Zero: return "zero";
    case Verdict::Bounded: return "bounded";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

/// Verdict from three probe values at T/4, T/2, T.
Verdict judge(double a, double b, double c) {
  const double scale = 1.0 + std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
  const double tol = 1e-9 * scale;
  if (std::fabs(a) <= tol && std::fabs(b) <= tol && std::fabs(c) <= tol) return Verdict::Zero;
  const double d1 = b - a, d2 = c - b;
  if (std::fabs(d1) <= tol && std::fabs(d2) <= tol) return Verdict::Bounded;
  // Growth that does not decelerate faster than halving per doubling.
  if (d1 > tol && d2 > tol && d2 >= 0.5 * d1 && c >= 1.0) return Verdict::Divergent;
  return Verdict::Undetermined;
}

}  // namespace

FlowClassification classify(const FlowSchedule& s, double tmax) {
  if (!(tmax > 0)) throw std::invalid_argument("classify: probe range must be positive");
  const int n = s.n();
  FlowClassification c;
  c.probes = {tmax / 4, tmax / 2, tmax};
  std::vector<std::vector<double>> xi;
  for (double t : c.probes) {
    c.r_values.push_back(s.r(t));
    xi.push_back(xi_coefficients(s, t));
  }
  for (int i = 0; i < n; ++i) {
    c.r_verdicts.push_back(judge(c.r_values[0][i], c.r_values[1][i], c.r_values[2][i]));
    c.xi_verdicts.push_back(judge(xi[0][i], xi[1][i], xi[2][i]));
  }
  auto spread = [&](int p) { return c.r_values[p][0] - c.r_values[p][n - 1]; };
  c.spread = judge(spread(0), spread(1), spread(2));

  int n0 = 0;
  for (int i = 0; i < n; ++i)
    if (c.r_verdicts[i] == Verdict::Divergent) n0 = i + 1;
  bool tail_zero = true;
  for (int i = n0; i < n; ++i) tail_zero = tail_zero && c.r_verdicts[i] == Verdict::Zero;
  bool head_divergent = true;
  for (int i = 0; i < n0; ++i) head_divergent = head_divergent && c.r_verdicts[i] == Verdict::Divergent;
  const bool spread_known = c.spread != Verdict::Undetermined;
  c.determined = n0 > 0 && tail_zero && head_divergent && spread_known;
  c.n0 = c.determined ? n0 : 0;
  // Non-uniform when some xi_j with j < n diverges.
  c.uniform = true;
  for (int j = 0; j + 1 < n; ++j) c.uniform = c.uniform && c.xi_verdicts[j] != Verdict::Divergent;

  c.k = 2 * n;
  for (int k = n + 1; k <= 2 * n; ++k) {
    bool ok = true;
    for (size_t p = 0; p < c.probes.size(); ++p) {
      const double t = c.probes[p];
      ok = ok && n * t + c.r_values[p][0] - k * t <= 1e-9 * (1 + n * t);
    }
    if (ok) {
      c.k = k;
      break;
    }
  }
  return c;
}

}  // namespace horolab::flowlab
