#pragma once

#include <memory>
#include <string>
#include <vector>

#include "horolab/core/matrix.hpp"
#include "horolab/weightlab/weight.hpp"

namespace horolab::weightlab {

enum class ModuleKind { Standard, Exterior, Adjoint, Tensor };

/// Finite-dimensional SL(n+1)-module with a distinguished weight basis.
/// Immutable after construction.
class WeightModule {
 public:
  /// Parses "standard", "exterior(d)", "adjoint" or "tensor(A,B)".
  static std::shared_ptr<const WeightModule> build(const std::string& kind, int n);
  static std::shared_ptr<const WeightModule> standard(int n);
  static std::shared_ptr<const WeightModule> exterior(int d, int n);
  static std::shared_ptr<const WeightModule> adjoint(int n);
  static std::shared_ptr<const WeightModule> tensor(std::shared_ptr<const WeightModule> a,
                                                    std::shared_ptr<const WeightModule> b);

  ModuleKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int dimension() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const Weight& weight_of(int idx) const { return weights_[idx]; }
  const std::vector<Weight>& weights() const { return weights_; }
  /// Eigenvalue of diagonal H on basis element idx.
  Rational eval(int idx, const Matrix<Rational>& h) const { return weights_[idx](h); }

  /// Group action matrix rho(g) in the weight basis.
  template <class T>
  Matrix<T> rho(const Matrix<T>& g) const;
  /// Lie algebra action d rho(X) in the weight basis.
  Matrix<Rational> drho(const Matrix<Rational>& x) const;

  int exterior_degree() const { return degree_; }

 private:
  WeightModule() = default;
  void finish_weights();

  ModuleKind kind_ = ModuleKind::Standard;
  std::string name_;
  int n_ = 0;
  int degree_ = 1;
  std::vector<std::vector<int>> subsets_;  // exterior basis
  std::vector<std::pair<int, int>> offdiag_;  // adjoint basis, then n Cartan elements
  std::shared_ptr<const WeightModule> left_, right_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Rational>> characters_;
  std::vector<Weight> weights_;
};

extern template Matrix<Rational> WeightModule::rho<Rational>(const Matrix<Rational>&) const;
extern template Matrix<double> WeightModule::rho<double>(const Matrix<double>&) const;
extern template Matrix<HiReal> WeightModule::rho<HiReal>(const Matrix<HiReal>&) const;

using ModulePtr = std::shared_ptr<const WeightModule>;

/// Vector in a module, in exact weight-basis coordinates.
class ModuleVector {
 public:
  ModuleVector(ModulePtr module, std::vector<Rational> coords);
  static ModuleVector zero(ModulePtr module);
  static ModuleVector basis(ModulePtr module, int idx);

  const ModulePtr& module() const { return module_; }
  const std::vector<Rational>& coords() const { return coords_; }
  int dimension() const { return static_cast<int>(coords_.size()); }
  bool is_zero() const;
  /// Sup-norm of the coordinates.
  Rational norm() const;

  ModuleVector operator+(const ModuleVector& o) const;
  ModuleVector operator-(const ModuleVector& o) const;
  ModuleVector operator*(const Rational& s) const;
  bool operator==(const ModuleVector& o) const { return coords_ == o.coords_; }

  std::string to_string() const;

 private:
  ModulePtr module_;
  std::vector<Rational> coords_;
};

}  // namespace horolab::weightlab
