#pragma once

#include <Eigen/Dense>

#include <vector>

namespace elastica {

/// Symmetric positive definite block-tridiagonal matrix with an optional
/// corner block coupling the last and first block rows (cyclic systems).
/// Factorised by block Cholesky; the corner produces one dense block row of
/// fill, so factor and solve are O(n b^3) and O(n b^2).
class BlockTridiagonal {
 public:
  BlockTridiagonal(int blocks, int block_size, bool cyclic);

  int blocks() const { return n_; }
  int block_size() const { return b_; }
  bool cyclic() const { return cyclic_; }

  /// A_{i,i}.
  Eigen::MatrixXd& diag(int i) { return diag_[i]; }
  /// A_{i+1,i}; A_{i,i+1} is its transpose.
  Eigen::MatrixXd& lower(int i) { return lower_[i]; }
  /// A_{n-1,0} of a cyclic system; A_{0,n-1} is its transpose.
  Eigen::MatrixXd& corner() { return corner_; }

  /// y = A x, x and y stacked block-wise.
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

  /// Throws SolverFailure if a pivot block is not positive definite.
  void factor();
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  int n_;
  int b_;
  bool cyclic_;
  std::vector<Eigen::MatrixXd> diag_, lower_;
  Eigen::MatrixXd corner_;

  bool factored_ = false;
  std::vector<Eigen::MatrixXd> l_diag_;  // lower Cholesky factors L_{i,i}
  std::vector<Eigen::MatrixXd> l_sub_;   // L_{i+1,i}
  std::vector<Eigen::MatrixXd> l_last_;  // L_{n-1,i}, cyclic only
};

}  // namespace elastica
