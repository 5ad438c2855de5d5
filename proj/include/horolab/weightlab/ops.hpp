#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "horolab/core/group.hpp"
#include "horolab/weightlab/module.hpp"

namespace horolab::weightlab {

/// rho(g) v for an exact group element.
ModuleVector act(const Matrix<Rational>& g, const ModuleVector& v);
/// Real-mode action; exp of diagonal H lands here.
std::vector<double> act_real(const Matrix<double>& g, const ModuleVector& v);
/// d rho(X) v.
ModuleVector act_lie(const Matrix<Rational>& x, const ModuleVector& v);

/// Weights carrying a nonzero component, in increasing lexicographic order.
std::vector<Weight> weight_support(const ModuleVector& v);
/// Weight components v_lambda; their sum reconstructs v.
std::map<Weight, ModuleVector> weight_components(const ModuleVector& v);
/// v_S: sum of components with weight in S.
ModuleVector restrict_to(const ModuleVector& v, const std::vector<Weight>& s);

/// If v is an H-eigenvector (H diagonal), its eigenvalue.
std::optional<Rational> eigenvalue(const ModuleVector& v, const Matrix<Rational>& h);

struct Subgroup {
  enum class Kind { G, Gn0, Q, Qn0, SL2, Custom } kind = Kind::G;
  int n0 = 0;
  int i = 0;
  std::vector<Matrix<Rational>> custom;

  static Subgroup G() { return {}; }
  static Subgroup G_n0(int n0) { return {Kind::Gn0, n0, 0, {}}; }
  static Subgroup Q() { return {Kind::Q, 0, 0, {}}; }
  static Subgroup Q_n0(int n0) { return {Kind::Qn0, n0, 0, {}}; }
  static Subgroup sl2(int i) { return {Kind::SL2, 0, i, {}}; }
  static Subgroup generated_by(std::vector<Matrix<Rational>> gens) { return {Kind::Custom, 0, 0, std::move(gens)}; }

  std::string name() const;
  /// Lie algebra generators inside sl(n+1).
  std::vector<Matrix<Rational>> generators(int n) const;
};

/// True iff d rho(X) v = 0 for every generator X.
bool fixed_check(const ModuleVector& v, const Subgroup& h);

struct SSetOptions {
  /// Test hook: replaces the S_k predicate by a strict inequality.
  bool corrupt_sk = false;
};

struct EqualityCheck {
  std::string part;  // "2b", "4a" or "4b"
  int j = 0;
  int n0 = 0;
  std::string subgroup;
  bool fixed = false;
};

struct SSetReport {
  Rational b;
  std::vector<Weight> lambda_support;
  std::vector<std::vector<Weight>> s_k;  // s_k[k-1] = S_k
  std::vector<Weight> s;
  bool part1 = false;
  bool part2a = false;
  bool part3 = false;
  std::vector<EqualityCheck> equalities;

  bool ok() const;
};

/// Checks the basic lemma for an H_C-eigenvector v and x with nonzero entries.
SSetReport s_sets(const ModuleVector& v, const std::vector<Rational>& x, const SSetOptions& opts = {});

struct SL2Report {
  int i = 0;
  Rational r;
  Rational lmax_v;
  Rational lmax_uv;
  bool inequality = false;
  bool equality = false;
  bool equality_form_ok = true;  // v = u^-(-1/r) v_max and (u(r)v)_max = sigma_1(r) v_max
  bool eigenvector = false;
  bool part3a_ok = true;
  bool part3b_ok = true;
  bool part3c_ok = true;

  bool ok() const { return inequality && equality_form_ok && part3a_ok && part3b_ok && part3c_ok; }
};

SL2Report sl2_maxweight_check(int i, const Rational& r, const ModuleVector& v);

struct IdentityResult {
  std::string id;
  std::string statement;
  bool pass = false;
  std::string detail;
};

struct IdentityReport {
  int n = 0;
  std::vector<IdentityResult> results;
  bool ok() const;
};

IdentityReport identity_suite(int n, std::uint64_t seed = 1);

/// Minimum over a sup-sphere grid of V(b) of the Delta^{0+}(b) component norm of u(x)v.
/// An upper estimate of the true constant.
double estimate_D1(const ModulePtr& module, const Rational& b, const std::vector<Rational>& x, int grid_density);

/// Indices of basis vectors spanning V(b).
std::vector<int> eigenspace_basis(const ModulePtr& module, const Matrix<Rational>& h, const Rational& b);
/// Distinct H_C eigenvalues on the module, increasing.
std::vector<Rational> hc_eigenvalues(const ModulePtr& module);
/// mu in Delta^{0+}(b).
bool in_delta0plus(const Weight& mu, const Rational& b, int n);

struct Grading {
  ModuleVector plus, zero, minus;
};
Grading grade_by_Hn0(int n0, const ModuleVector& v);

nlohmann::json to_json(const Weight& w);
nlohmann::json to_json(const WeightModule& m);
nlohmann::json to_json(const ModuleVector& v);
nlohmann::json to_json(const SSetReport& r);
nlohmann::json to_json(const SL2Report& r);
nlohmann::json to_json(const IdentityReport& r);

}  // namespace horolab::weightlab
