#pragma once

#include <functional>
#include <string>
#include <vector>

namespace horolab::flowlab {

/// Exponents r_1(t) >= ... >= r_n(t) >= 0 with sum n t; a_t = diag(e^{nt}, e^{-r_1}, ..., e^{-r_n}).
class FlowSchedule {
 public:
  using Fn = std::function<std::vector<double>(double)>;

  static FlowSchedule equal(int n);
  /// r_i = c_i t.
  static FlowSchedule linear(std::vector<double> slopes);
  /// r_n = min(t, sqrt t), the others share the rest equally.
  static FlowSchedule sublinear_tail(int n);
  static FlowSchedule custom(std::string name, int n, Fn r);
  /// "equal", "linear:<c1,...,cn>", "sublinear-tail".
  static FlowSchedule parse(const std::string& preset, int n);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  /// Evaluates and validates the invariants to 1e-12 relative.
  std::vector<double> r(double t) const;
  /// diag(nt, -r_1, ..., -r_n).
  std::vector<double> h_diag(double t) const;

 private:
  std::string name_;
  int n_ = 0;
  Fn fn_;
};

/// xi_n = r_n, xi_i = (i/n)(r_i - r_{i+1}).
std::vector<double> xi_coefficients(const FlowSchedule& s, double t);
/// sum xi_i H_i as a diagonal.
std::vector<double> h_xi(int n, const std::vector<double>& xi);

enum class Verdict { Divergent, Zero, Bounded, Undetermined };
std::string to_string(Verdict v);

struct FlowClassification {
  int n0 = 0;  // 0 when undetermined
  Verdict spread = Verdict::Undetermined;  // r_1 - r_n
  bool uniform = false;
  bool determined = false;
  int k = 0;
  std::vector<Verdict> r_verdicts;
  std::vector<Verdict> xi_verdicts;
  std::vector<double> probes;
  std::vector<std::vector<double>> r_values;  // per probe
};

/// Probes at T/4, T/2 and T.
FlowClassification classify(const FlowSchedule& s, double t_probe_max);

}  // namespace horolab::flowlab
