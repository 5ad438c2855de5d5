#pragma once

#include <string>
#include <vector>

#include "horolab/core/matrix.hpp"

namespace horolab::latticelab {

/// Unimodular lattice in R^{n+1}; rows of the matrix generate it.
struct LatticeBasis {
  Matrix<double> rows;
  std::vector<std::string> provenance;

  static LatticeBasis standard(int dim);
  /// Validates |det - 1| <= 1e-9.
  static LatticeBasis from_rows(Matrix<double> rows, std::string tag);
  /// Rescales rows by |det|^{-1/dim} and flips the last row if det < 0.
  static LatticeBasis unimodularize(Matrix<double> rows, std::string tag);

  int dim() const { return rows.rows(); }
  double det() const { return determinant(rows); }
  /// The lattice g Lambda: each generator b becomes g b.
  LatticeBasis translated(const Matrix<double>& g, const std::string& tag) const;
};

struct Reduction {
  LatticeBasis basis;
  /// Integer matrix U with reduced rows = U * original rows (stored as doubles).
  Matrix<double> transform;
  int swaps = 0;
};

/// LLL with Lovasz parameter delta in (1/4, 1).
Reduction lll_reduce(const LatticeBasis& basis, double delta = 0.99);

struct ShortestVector {
  double length = 0;
  std::vector<double> vector;
  std::vector<long long> coeffs;  // in the given basis
};

/// Fincke-Pohst enumeration of the shortest nonzero vector with norm <= radius.
/// Radius <= 0 means the shortest row length.
ShortestVector enumerate_shortest(const Matrix<double>& rows, double radius = 0);

/// Coefficient vectors of every nonzero lattice point with norm <= radius.
/// Throws std::length_error when more than `limit` points qualify.
std::vector<std::vector<long long>> enumerate_ball(const Matrix<double>& rows, double radius, size_t limit);

/// Euclidean length of the shortest nonzero vector (LLL then enumeration).
double systole(const LatticeBasis& basis);

/// Named bases in the compact part used as base points.
LatticeBasis catalog_basis(const std::string& name, int dim);
std::vector<std::string> catalog_names();

}  // namespace horolab::latticelab
