#include "sizepop/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sizepop/errors.hpp"
#include "sizepop/linear_solve.hpp"

namespace sizepop {

namespace {

double weighted_l1(const Eigen::VectorXd& x, const Eigen::VectorXd& w) { return w.dot(x.cwiseAbs()); }

/// Flips the sign so that the entry of largest magnitude is positive.
void orient(Eigen::VectorXd& x) {
  Eigen::Index k = 0;
  x.cwiseAbs().maxCoeff(&k);
  if (x(k) < 0.0) x = -x;
}

DenseFactorization factor_shifted(const Eigen::MatrixXd& a, double sigma) {
  Eigen::MatrixXd m = -a;
  m.diagonal().array() += sigma;
  std::ostringstream ctx;
  ctx << "inverse iteration with shift " << sigma;
  return DenseFactorization(m, ctx.str());
}

bool reachable_from_first(const Eigen::MatrixXd& a, bool transposed) {
  const Eigen::Index n = a.rows();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> stack{0};
  seen[0] = 1;
  Eigen::Index count = 1;
  while (!stack.empty()) {
    const Eigen::Index i = stack.back();
    stack.pop_back();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i || seen[static_cast<std::size_t>(j)]) continue;
      const double entry = transposed ? a(j, i) : a(i, j);
      if (entry > 0.0) {
        seen[static_cast<std::size_t>(j)] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

}  // namespace

PopulationState SpectralResult::project(const PopulationState& u) const {
  if (u.size() != weights.size()) throw DimensionError("state size does not match the spectral pair");
  double pairing = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) pairing += weights[i] * left_vector[i] * u[i];
  PopulationState out(right_vector.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pairing * right_vector[i];
  return out;
}

SpectralResult spectral_bound(const GeneratorMatrix& g, double tol, int max_iter) {
  if (max_iter < 1) throw ArgumentError("max_iter must be positive");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");

  const Eigen::MatrixXd a = g.dense();
  const auto n = a.rows();
  const auto wspan = g.weights();
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(wspan.data(), n);

  double norm_a = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) norm_a = std::max(norm_a, w.dot(a.col(j).cwiseAbs()) / w(j));
  const double tol_eff = std::max(tol, 64.0 * std::numeric_limits<double>::epsilon() * norm_a);

  double sigma = g.omega_bound() + 1.0;
  DenseFactorization lu = factor_shifted(a, sigma);

  SpectralResult result;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  x /= weighted_l1(x, w);
  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  bool converged = false;
  while (it < max_iter) {
    ++it;
    Eigen::VectorXd y = lu.solve(x);
    const double yn = weighted_l1(y, w);
    if (!(yn > 0.0) || !std::isfinite(yn)) {
      throw DegenerateError("inverse iteration collapsed to the zero vector");
    }
    orient(y);
    x = y / yn;
    const Eigen::VectorXd ax = a * x;
    lambda = x.dot(ax) / x.squaredNorm();
    residual = weighted_l1(ax - lambda * x, w);
    if (residual <= tol_eff) {
      converged = true;
      break;
    }
    // Collatz-Wielandt: for x > 0, min (Ax)_i/x_i <= s(A) <= max (Ax)_i/x_i.
    if (x.minCoeff() > 0.0) {
      const Eigen::VectorXd ratio = ax.cwiseQuotient(x);
      const double upper = ratio.maxCoeff();
      const double lower = ratio.minCoeff();
      const double margin = std::max(upper - lower, 1e-6 * (1.0 + std::abs(upper)));
      const double candidate = upper + margin;
      if (candidate < sigma && candidate - lower < 0.5 * (sigma - lower)) {
        try {
          lu = factor_shifted(a, candidate);
          sigma = candidate;
        } catch (const SolveError&) {
          // keep the previous shift
        }
      }
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "inverse iteration did not converge in " << max_iter << " iterations (residual " << residual
       << ", tolerance " << tol_eff << ")";
    throw ConvergenceError(os.str());
  }

  // Left eigenvector from the transposed system at the final shift.
  Eigen::VectorXd z = w;
  double left_residual = std::numeric_limits<double>::infinity();
  int left_it = 0;
  bool left_converged = false;
  while (left_it < max_iter) {
    ++left_it;
    Eigen::VectorXd y = lu.solve_transposed(z);
    const double yn = y.cwiseAbs().maxCoeff();
    if (!(yn > 0.0) || !std::isfinite(yn)) {
      throw DegenerateError("transposed inverse iteration collapsed to the zero vector");
    }
    orient(y);
    z = y / yn;
    const Eigen::VectorXd r = a.transpose() * z - lambda * z;
    left_residual = r.cwiseQuotient(w).cwiseAbs().maxCoeff() / z.cwiseQuotient(w).cwiseAbs().maxCoeff();
    if (left_residual <= tol_eff) {
      left_converged = true;
      break;
    }
  }
  if (!left_converged) {
    std::ostringstream os;
    os << "left eigenvector did not converge in " << max_iter << " iterations (residual " << left_residual
       << ")";
    throw ConvergenceError(os.str());
  }

  const double mass = w.dot(x);
  const double scale = std::abs(mass) > 1e-300 ? mass : weighted_l1(x, w);
  const Eigen::VectorXd v = x / scale;
  const double pairing = z.dot(v);
  if (!(std::abs(pairing) > 0.0)) throw DegenerateError("left and right eigenvectors are orthogonal");
  const Eigen::VectorXd psi = z.cwiseQuotient(w) / pairing;

  result.malthus = lambda;
  result.right_vector = PopulationState::from_eigen(v);
  result.left_vector = PopulationState::from_eigen(psi);
  result.residual = weighted_l1(a * v - lambda * v, w) / weighted_l1(v, w);
  result.left_residual = left_residual;
  result.iterations = it + left_it;
  result.irreducible = irreducibility_check(a);
  result.shift = sigma;
  result.weights.assign(wspan.begin(), wspan.end());
  return result;
}

bool irreducibility_check(const GeneratorMatrix& g) { return irreducibility_check(g.dense()); }

bool irreducibility_check(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DimensionError("irreducibility check needs a square matrix");
  if (a.rows() <= 1) return true;
  return reachable_from_first(a, false) && reachable_from_first(a, true);
}

double growth_rate_from_trajectory(const Trajectory& traj, double t_a, double t_b) {
  if (!(t_b > t_a)) throw ArgumentError("growth-rate window needs t_b > t_a");
  double st = 0.0;
  double sy = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    if (t < t_a || t > t_b) continue;
    if (!(traj.masses[k] > 0.0)) {
      std::ostringstream os;
      os << "mass must be positive on the growth-rate window (mass " << traj.masses[k] << " at t = " << t << ")";
      throw ArgumentError(os.str());
    }
    st += t;
    sy += std::log(traj.masses[k]);
    ++count;
  }
  if (count < 2) throw ArgumentError("growth-rate window holds fewer than two samples");
  const double t_mean = st / static_cast<double>(count);
  const double y_mean = sy / static_cast<double>(count);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    if (t < t_a || t > t_b) continue;
    const double dt = t - t_mean;
    sxy += dt * (std::log(traj.masses[k]) - y_mean);
    sxx += dt * dt;
  }
  return sxy / sxx;
}

std::vector<std::pair<double, double>> aeg_diagnostic(const Trajectory& traj, const SpectralResult& spec) {
  if (traj.snapshots.empty()) throw ArgumentError("trajectory has no snapshots");
  const auto& w = spec.weights;
  std::vector<std::pair<double, double>> out;
  out.reserve(traj.snapshots.size());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const auto& u = traj.snapshots[k];
    if (u.size() != w.size()) throw DimensionError("snapshot size does not match the spectral pair");
    double mass = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) mass += w[i] * u[i];
    if (!(mass > 0.0)) throw ArgumentError("snapshot mass must be positive for the AEG diagnostic");
    double dist = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) dist += w[i] * std::abs(u[i] / mass - spec.right_vector[i]);
    out.emplace_back(traj.snapshot_time(k), dist);
  }
  return out;
}

}  // namespace sizepop
