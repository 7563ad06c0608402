#include "sizepop/linear_solve.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sizepop/errors.hpp"

namespace sizepop {

DenseFactorization::DenseFactorization(const Eigen::MatrixXd& matrix, const std::string& context)
    : lu_(matrix) {
  rcond_ = lu_.rcond();
  // PartialPivLU does not flag exact zero pivots; the diagonal of U does.
  const auto& u = lu_.matrixLU();
  bool zero_pivot = false;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    if (!(std::abs(u(i, i)) > 0.0) || !std::isfinite(u(i, i))) zero_pivot = true;
  }
  if (zero_pivot || !(rcond_ > std::numeric_limits<double>::epsilon())) {
    std::ostringstream os;
    os << context << ": matrix is numerically singular (condition estimate "
       << (rcond_ > 0.0 ? 1.0 / rcond_ : std::numeric_limits<double>::infinity()) << ")";
    throw SolveError(os.str());
  }
}

Eigen::VectorXd DenseFactorization::solve(const Eigen::VectorXd& rhs) const { return lu_.solve(rhs); }

Eigen::VectorXd DenseFactorization::solve_transposed(const Eigen::VectorXd& rhs) const {
  return lu_.transpose().solve(rhs);
}

}  // namespace sizepop
