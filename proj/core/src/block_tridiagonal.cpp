#include "elastica/block_tridiagonal.hpp"

#include <Eigen/Cholesky>

#include <string>

#include "elastica/error.hpp"

namespace elastica {

namespace {

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& a, int block) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::SolverFailure, "inertia system is not positive definite at block " + std::to_string(block));
  }
  return llt.matrixL();
}

// X = B L^{-T}, i.e. X L^T = B.
Eigen::MatrixXd right_solve_lt(const Eigen::MatrixXd& b, const Eigen::MatrixXd& l) {
  return l.triangularView<Eigen::Lower>().solve(b.transpose()).transpose();
}

}  // namespace

BlockTridiagonal::BlockTridiagonal(int blocks, int block_size, bool cyclic)
    : n_(blocks), b_(block_size), cyclic_(cyclic) {
  if (blocks < 1 || block_size < 1) throw Error(ErrorKind::InvalidArgument, "empty block system");
  if (cyclic && blocks < 3) throw Error(ErrorKind::InvalidArgument, "cyclic block system needs at least 3 blocks");
  diag_.assign(n_, Eigen::MatrixXd::Zero(b_, b_));
  lower_.assign(std::max(0, n_ - 1), Eigen::MatrixXd::Zero(b_, b_));
  corner_ = Eigen::MatrixXd::Zero(b_, b_);
}

Eigen::VectorXd BlockTridiagonal::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
  auto seg = [&](const Eigen::VectorXd& v, int i) { return v.segment(i * b_, b_); };
  for (int i = 0; i < n_; ++i) y.segment(i * b_, b_) += diag_[i] * seg(x, i);
  for (int i = 0; i + 1 < n_; ++i) {
    y.segment((i + 1) * b_, b_) += lower_[i] * seg(x, i);
    y.segment(i * b_, b_) += lower_[i].transpose() * seg(x, i + 1);
  }
  if (cyclic_) {
    y.segment((n_ - 1) * b_, b_) += corner_ * seg(x, 0);
    y.segment(0, b_) += corner_.transpose() * seg(x, n_ - 1);
  }
  return y;
}

void BlockTridiagonal::factor() {
  l_diag_.assign(n_, Eigen::MatrixXd());
  l_sub_.assign(std::max(0, n_ - 1), Eigen::MatrixXd());
  l_last_.clear();
  // Without the corner this is the plain block-tridiagonal Cholesky. With it,
  // block row n-1 fills in: L_{n-1,i} for i < n-2 is carried separately.
  const int body = cyclic_ ? n_ - 1 : n_;
  for (int i = 0; i < body; ++i) {
    Eigen::MatrixXd d = diag_[i];
    if (i > 0) d -= l_sub_[i - 1] * l_sub_[i - 1].transpose();
    l_diag_[i] = cholesky_lower(d, i);
    if (i + 1 < body) l_sub_[i] = right_solve_lt(lower_[i], l_diag_[i]);
  }
  if (cyclic_) {
    const int last = n_ - 1;
    l_last_.assign(last, Eigen::MatrixXd());
    for (int i = 0; i < last; ++i) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(b_, b_);
      if (i == 0) a += corner_;
      if (i == last - 1) a += lower_[last - 1];
      if (i > 0) a -= l_last_[i - 1] * l_sub_[i - 1].transpose();
      l_last_[i] = right_solve_lt(a, l_diag_[i]);
    }
    Eigen::MatrixXd d = diag_[last];
    for (int i = 0; i < last; ++i) d -= l_last_[i] * l_last_[i].transpose();
    l_diag_[last] = cholesky_lower(d, last);
  }
  factored_ = true;
}

Eigen::VectorXd BlockTridiagonal::solve(const Eigen::VectorXd& rhs) const {
  if (!factored_) throw Error(ErrorKind::InvalidArgument, "block system solved before factor()");
  const int body = cyclic_ ? n_ - 1 : n_;
  Eigen::VectorXd y = rhs;
  // Forward: L y = rhs.
  for (int i = 0; i < body; ++i) {
    Eigen::VectorXd r = y.segment(i * b_, b_);
    if (i > 0) r -= l_sub_[i - 1] * y.segment((i - 1) * b_, b_);
    y.segment(i * b_, b_) = l_diag_[i].triangularView<Eigen::Lower>().solve(r);
  }
  if (cyclic_) {
    const int last = n_ - 1;
    Eigen::VectorXd r = y.segment(last * b_, b_);
    for (int i = 0; i < last; ++i) r -= l_last_[i] * y.segment(i * b_, b_);
    y.segment(last * b_, b_) = l_diag_[last].triangularView<Eigen::Lower>().solve(r);
  }
  // Backward: L^T x = y.
  Eigen::VectorXd x = y;
  if (cyclic_) {
    const int last = n_ - 1;
    x.segment(last * b_, b_) = l_diag_[last].transpose().triangularView<Eigen::Upper>().solve(y.segment(last * b_, b_));
  }
  for (int i = body - 1; i >= 0; --i) {
    Eigen::VectorXd r = y.segment(i * b_, b_);
    if (i + 1 < body) r -= l_sub_[i].transpose() * x.segment((i + 1) * b_, b_);
    if (cyclic_) r -= l_last_[i].transpose() * x.segment((n_ - 1) * b_, b_);
    x.segment(i * b_, b_) = l_diag_[i].transpose().triangularView<Eigen::Upper>().solve(r);
  }
  return x;
}

}  // namespace elastica
