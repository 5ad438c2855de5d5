#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "horolab/core/rational.hpp"
#include "horolab/curvejet/curve.hpp"
#include "horolab/latticelab/lattice.hpp"

namespace horolab::dirichlet {

inline constexpr double kSearchBudget = 1e7;

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Form { Primal, Dual };
std::string to_string(Form f);

struct DIQuery {
  Form form = Form::Primal;
  /// xi as doubles; each double is taken as the exact real it represents.
  std::vector<double> xi;
  /// When set, xi is rational and every comparison is exact.
  std::optional<std::vector<Rational>> xi_exact;
  std::vector<long long> n_box;
  Rational mu{1};

  static DIQuery primal(std::vector<double> xi, std::vector<long long> n, double mu);
  static DIQuery dual(std::vector<double> xi, std::vector<long long> n, double mu);
  static DIQuery primal_exact(std::vector<Rational> xi, std::vector<long long> n, Rational mu);
  static DIQuery dual_exact(std::vector<Rational> xi, std::vector<long long> n, Rational mu);

  int n() const { return static_cast<int>(xi.size()); }
  long long product() const;
  void validate() const;
};

struct WitnessResult {
  bool found = false;
  /// Some candidate could not be decided by interval arithmetic; treated as not a witness.
  bool undecided = false;
  std::vector<long long> q;  // primal: (q_1..q_n); dual: (q)
  std::vector<long long> p;  // primal: (p); dual: (p_1..p_n)
  long long search_volume = 0;
};

/// Primal search: 0 < max|q_i|, |q_i| <= N_i, |xi.q - p| <= mu / prod N.
WitnessResult di_witness(const DIQuery& query);
/// Dual search: 0 < |q| <= prod N, |xi_i q - p_i| <= mu / N_i; returns the minimal-|q| witness.
WitnessResult di_dual_witness(const DIQuery& query);
/// Dispatches on the form.
WitnessResult witness(const DIQuery& query);
/// True iff the witness satisfies the defining inequalities (exactly or by interval arithmetic).
bool check_witness(const DIQuery& query, const WitnessResult& w);

struct DaniLattice {
  DIQuery query;
  latticelab::LatticeBasis basis;
  std::vector<double> half_widths;
};

/// Primal: rows (1, 0, ..), (xi_i, e_i); a witness (q, p) is the point (xi.q - p, q).
/// Dual: rows (1, xi), (0, e_i); a witness (q, p) is the point (q, xi q - p).
DaniLattice dani_lattice(const DIQuery& query);
/// Generic enumeration of nonzero lattice points in the box, excluding points whose
/// q-part vanishes. Shares no code with di_witness.
WitnessResult box_point_search(const DaniLattice& lattice);

struct RBar {
  double value = 0;
  std::optional<Rational> exact;
  size_t index = 0;  // tail index achieving the value
  size_t skipped = 0;
  std::vector<double> ratios;
};

/// Tail supremum of log max N_i / log prod N_i over the second half of the sequence.
RBar rbar1(const std::vector<std::vector<long long>>& seq);

struct ScanRow {
  double s = 0;
  std::vector<int> primal;  // 1 found, 0 not found, -1 skipped
  std::vector<int> dual;
  std::vector<WitnessResult> primal_witness;
  std::vector<WitnessResult> dual_witness;
  bool all_improvable = false;
  bool rational_exception = false;
};

struct CurveScan {
  std::vector<ScanRow> rows;
  /// fraction_all[L-1]: fraction of s with every cell of the first L entries found in both forms.
  std::vector<double> fraction_all;
  std::vector<double> fraction_primal;  // per N index, fraction of s with a primal witness
  std::vector<double> fraction_dual;
};

struct ScanSpec {
  curvejet::CurveSpec curve;
  double lo = 0, hi = 1;
  std::vector<std::vector<long long>> prefix;
  Rational mu{1};
  int grid = 100;
  /// Grid offset in [0, 1). The default is irrational: an equispaced rational grid puts every
  /// s on a small-denominator rational, and those become improvable once the prefix is long enough.
  double offset = 0.6180339887498949;
};

/// Grid s_i = lo + (hi - lo)(i + offset) / grid, i = 0..grid-1.
CurveScan curve_scan(const ScanSpec& spec);
CurveScan curve_scan_parallel(const ScanSpec& spec);

nlohmann::json to_json(const WitnessResult& w);
nlohmann::json to_json(const RBar& r);
nlohmann::json to_json(const CurveScan& c);

}  // namespace horolab::dirichlet
