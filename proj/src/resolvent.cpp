#include "sizepop/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sizepop/errors.hpp"

namespace sizepop {

double omega_min(const Model& model) {
  const auto rates = boundary_rates(model);
  return std::max({0.0, rates.left, rates.right});
}

namespace {

DenseFactorization factor_resolvent(const GeneratorMatrix& g_tilde, double lambda, double omega) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) throw ArgumentError("resolvent parameter lambda must be positive");
  if (g_tilde.has_recruitment()) {
    throw ArgumentError("resolvent solves take the recruitment-free generator (use without_recruitment())");
  }
  Eigen::MatrixXd m = -lambda * g_tilde.local_dense();
  m.diagonal().array() += 1.0 + lambda * omega;
  std::ostringstream ctx;
  ctx << "resolvent with lambda = " << lambda << ", omega = " << omega;
  return DenseFactorization(m, ctx.str());
}

}  // namespace

ResolventSolver::ResolventSolver(const GeneratorMatrix& g_tilde, double lambda, double omega)
    : lu_(factor_resolvent(g_tilde, lambda, omega)), size_(g_tilde.size()) {}

PopulationState ResolventSolver::solve(const PopulationState& rhs) const {
  if (rhs.size() != size_) throw DimensionError("right-hand side size does not match the generator");
  return PopulationState::from_eigen(lu_.solve(rhs.as_eigen()));
}

PopulationState solve_resolvent(const GeneratorMatrix& g_tilde, double lambda, double omega,
                                const PopulationState& h) {
  return ResolventSolver(g_tilde, lambda, omega).solve(h);
}

ResolventReport dissipativity_check(const Model& model, const Grid& grid, const std::vector<double>& lambdas,
                                    double omega, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw ArgumentError("dissipativity check needs at least one sample");
  if (lambdas.empty()) throw ArgumentError("dissipativity check needs at least one lambda");

  const auto g_tilde = assemble_generator(model.with_beta(Kernel::constant(0.0)), grid);
  ResolventReport report;
  report.omega = omega;
  report.omega_min = omega_min(model);
  report.samples = n_samples;
  report.seed = seed;
  report.worst_entry = std::numeric_limits<double>::infinity();
  report.lambda = lambdas.front();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> signed_dist(-1.0, 1.0);
  std::uniform_real_distribution<double> unit_dist(0.0, 1.0);
  PopulationState h(g_tilde.size());

  for (double lambda : lambdas) {
    const ResolventSolver solver(g_tilde, lambda, omega);
    for (int k = 0; k < n_samples; ++k) {
      for (auto& v : h.values()) v = signed_dist(rng);
      const double hn = weighted_norm(h, g_tilde);
      if (hn > 0.0) {
        const double ratio = weighted_norm(solver.solve(h), g_tilde) / hn;
        if (ratio > report.max_ratio) {
          report.max_ratio = ratio;
          report.lambda = lambda;
        }
      }

      for (auto& v : h.values()) v = unit_dist(rng);
      const auto u = solver.solve(h);
      for (double v : u.values()) {
        if (v < -kPositivityTolerance) ++report.positivity_violations;
        report.worst_entry = std::min(report.worst_entry, v);
      }
    }
  }
  return report;
}

}  // namespace sizepop
