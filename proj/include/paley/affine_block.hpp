#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace paley {

// One upper-triangle entry (row <= col) of a symmetric matrix.
struct SparseEntry {
  int row = 0;
  int col = 0;
  double value = 0.0;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Symmetric sparse matrix as sorted, duplicate-free upper-triangle entries.
using SparseSymmetric = std::vector<SparseEntry>;

// Sorts, folds (r,c) with r > c onto the upper triangle, sums duplicates and drops zeros.
void canonicalize(SparseSymmetric& m);

// Affine symmetric matrix map y -> F0 + sum_i y_i F_i.
struct AffineBlock {
  std::string name;
  int size = 0;
  SparseSymmetric constant;
  std::vector<SparseSymmetric> coefficients;

  int num_vars() const { return static_cast<int>(coefficients.size()); }
  Eigen::MatrixXd evaluate(std::span<const double> y) const;
  // Dense F_var; var == -1 selects the constant term.
  Eigen::MatrixXd dense(int var) const;
  // Coefficient of variable `var` (or the constant, var == -1) at (r, c).
  double coefficient(int var, int r, int c) const;
  // True when row r carries no constant and no variable coefficient.
  bool row_is_zero(int r) const;

  friend bool operator==(const AffineBlock&, const AffineBlock&) = default;
};

// Accumulates entries before canonicalising into an AffineBlock.
class AffineBlockBuilder {
 public:
  AffineBlockBuilder(std::string name, int size, int num_vars);

  // Adds v at (r,c) and, off the diagonal, at (c,r). var == -1 is the constant term.
  void add(int var, int r, int c, double v);
  AffineBlock build() &&;

 private:
  AffineBlock block_;
};

// sum_k scale_k * blocks_k; all blocks must agree in size and variable count.
AffineBlock linear_combination(const std::vector<const AffineBlock*>& blocks, const std::vector<double>& scales,
                               std::string name);

// Principal submatrix on `keep` (row indices, in the given order).
AffineBlock principal_submatrix(const AffineBlock& block, const std::vector<int>& keep, std::string name);

}  // namespace paley
