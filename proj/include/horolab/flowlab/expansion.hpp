#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "horolab/curvejet/frame.hpp"
#include "horolab/flowlab/schedule.hpp"
#include "horolab/flowlab/vandermonde.hpp"
#include "horolab/weightlab/ops.hpp"

namespace horolab::flowlab {

/// alpha_t = e^{rate t}; rate 0 is the alpha = 1 mode, 0 < rate < 1 the slow-shrinking mode.
struct Alpha {
  double rate = 0;
  double at(double t) const;
  /// alpha_t >= 1 and alpha_t e^{-t} -> 0.
  bool admissible() const { return rate >= 0 && rate < 1; }
  std::string name() const;
};

/// H_C eigenvalue spread max(b_1 - b_2), the degree bound in eta.
int weight_gap_degree(const weightlab::ModulePtr& module);

/// Grid on J: uniform points, the equispaced Vandermonde nodes, and Chebyshev nodes.
std::vector<double> eta_grid(const Interval& j, int uniform_points, int degree);

struct ExpansionResult {
  double t = 0;
  double alpha = 1;
  double m_t = 0;         // grid maximum
  double m_upper = 0;     // Markov bound on the true supremum (inf if the grid is too coarse)
  double eta_argmax = 0;
  int degree = 0;         // polynomial degree in eta of the components
  int grid_points = 0;
};

/// sup_{eta in J} ||a_t u(R(alpha_t e^{-t} eta)) v|| over a grid.
ExpansionResult expansion_supremum(const weightlab::ModuleVector& v, const FlowSchedule& schedule,
                                   const curvejet::CurveFrame& frame, double t, const Alpha& alpha,
                                   const Interval& j, int grid);

/// Same for several vectors of one module; rho(u(R(h))) is shared across them.
std::vector<ExpansionResult> expansion_supremum_batch(const std::vector<weightlab::ModuleVector>& vs,
                                                      const FlowSchedule& schedule, const curvejet::CurveFrame& frame,
                                                      double t, const Alpha& alpha, const Interval& j, int grid);

struct D2Certificate {
  int d = 0;
  VandermondeConstant vandermonde;
  std::vector<Rational> b;
  std::vector<double> d1_per_b;
  double d1 = 0;
  double d2 = 0;
};

/// D_2 = C_{d,J} D_1 / 2 with D_1 the minimum of estimate_D1 over the H_C eigenvalues.
D2Certificate certify_d2(const weightlab::ModulePtr& module, const curvejet::CurveFrame& frame, const Interval& j,
                         int d1_density);

struct GrowthWitness {
  Verdict verdict = Verdict::Undetermined;
  double rate = 0;  // log-slope over the top half of the ladder
  std::vector<double> ladder;
  std::vector<double> m_t;
  std::string subgroup;
  int n0 = 0;
  bool fixed = false;
  /// bounded iff fixed; undetermined verdicts never agree.
  bool agrees = false;
};

/// Classifies growth of M_t along the ladder and cross-checks with fixed_check for
/// Q_{n0} (alpha = 1) or G_{n0} (alpha -> infinity).
GrowthWitness growth_witness(const weightlab::ModuleVector& v, const FlowSchedule& schedule,
                             const curvejet::CurveFrame& frame, const Interval& j, const std::vector<double>& ladder,
                             const Alpha& alpha = {}, int grid = 64);

/// exp((log eta) H_{n0}) w(kappa) e_n with w = sigma(kappa) if n0 = n and u(kappa e_n) otherwise.
std::vector<HiReal> qfixed_limit_vector(int n, int n0, const HiReal& kappa, const HiReal& eta);

struct QFixedLimit {
  double residual = 0;
  std::vector<HiReal> translate;
  std::vector<HiReal> limit;
};

QFixedLimit qfixed_limit(const curvejet::CurveFrame& frame, const FlowSchedule& schedule, int n0, double eta,
                         double t);

struct ApproxResidual {
  double residual = 0;
  double vt_sup_entry = 0;
  double h = 0;
};

/// ||a_t u(phi(s+h)) [v_t(s)^{-1} a_t u(R(h)) v(s) u(phi(s))]^{-1} - I|| with h = alpha_t e^{-t} eta.
ApproxResidual approx_residual(const curvejet::CurveSpec& curve, double s, const FlowSchedule& schedule, int k,
                               double t, double eta, const Alpha& alpha = {});

nlohmann::json to_json(const FlowClassification& c);
nlohmann::json to_json(const VandermondeConstant& c);
nlohmann::json to_json(const ExpansionResult& r);
nlohmann::json to_json(const D2Certificate& c);
nlohmann::json to_json(const GrowthWitness& g);

}  // namespace horolab::flowlab
