#pragma once

#include <string>

#include <Eigen/Dense>

namespace sizepop {

/// LU factorization with partial pivoting that refuses numerically singular
/// matrices. `context` is prepended to the SolveError message.
class DenseFactorization {
 public:
  DenseFactorization() = default;
  DenseFactorization(const Eigen::MatrixXd& matrix, const std::string& context);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::VectorXd solve_transposed(const Eigen::VectorXd& rhs) const;

  /// Reciprocal condition number estimate (1-norm).
  double rcond() const { return rcond_; }
  Eigen::Index size() const { return lu_.rows(); }

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double rcond_ = 0.0;
};

}  // namespace sizepop
