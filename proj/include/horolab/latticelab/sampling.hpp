#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "horolab/curvejet/curve.hpp"
#include "horolab/flowlab/schedule.hpp"
#include "horolab/latticelab/lattice.hpp"

namespace horolab::latticelab {

struct EmpiricalMeasure {
  std::string observable;
  std::vector<double> values;  // sorted
  std::vector<double> edges;
  std::vector<double> masses;

  static EmpiricalMeasure from_values(std::string observable, std::vector<double> values, int bins = 50);
  size_t count() const { return values.size(); }
  double mean() const;
  /// Empirical quantile by the nearest-rank rule.
  double quantile(double q) const;
  /// Fraction of samples strictly below x.
  double mass_below(double x) const;
};

struct Observable {
  enum class Kind { Systole, InverseSystole, Indicator } kind = Kind::Systole;
  double param = 0;  // cap for InverseSystole, threshold for Indicator

  /// "systole", "inv-systole:<cap>", "indicator:<c>".
  static Observable parse(const std::string& s);
  std::string name() const;
  double operator()(double systole) const;
};

/// Where the curve is sampled.
struct Sampler {
  enum class Kind { UniformS, Eta, EtaBeta } kind = Kind::UniformS;
  double lo = 0, hi = 1;  // s-interval (UniformS) or J (eta modes)
  double s0 = 0;
  double beta_rate = 0;   // beta_t = e^{beta_rate t}

  /// "uniform:<lo>,<hi>", "eta:<s0>:<lo>,<hi>", "eta-beta:<s0>:<lo>,<hi>:<rate>".
  static Sampler parse(const std::string& s);
  std::string name() const;
  /// Curve parameter for sample i.
  double point(double t, std::uint64_t seed, std::uint64_t i) const;
};

struct TranslateJob {
  curvejet::CurveSpec curve;
  flowlab::FlowSchedule schedule;
  LatticeBasis base;
  Sampler sampler;
  Observable observable;
  double t = 0;
  int samples = 0;
  std::uint64_t seed = 42;
};

/// Observable at a_t u(phi(point)) base for each sample; the serial reference.
EmpiricalMeasure translate_sample(const TranslateJob& job);
/// OpenMP version; bitwise identical to the serial one.
EmpiricalMeasure translate_sample_parallel(const TranslateJob& job);

/// Two-sample Kolmogorov-Smirnov statistic.
double consistency_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

struct EscapeRow {
  double t = 0;
  double systole = 0;
  double closed_form = 0;  // NaN for the critical contrast
  double rel_error = 0;
};

/// systole(a_t u(rate_t eta) Z^2) with rate_t = e^{-2t} ("fast") or e^{-t} ("critical").
std::vector<EscapeRow> escape_probe(const std::vector<double>& ladder, double eta, const std::string& rate);

/// Observable along a long unipotent orbit u(s e_1) base, s equispaced in [0, length].
EmpiricalMeasure unipotent_orbit_oracle(const LatticeBasis& base, double length, int samples,
                                        const Observable& observable);

nlohmann::json summary_json(const EmpiricalMeasure& m);

}  // namespace horolab::latticelab
