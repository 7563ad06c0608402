#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sizepop/discretization.hpp"
#include "sizepop/evolution.hpp"

namespace sizepop {

/// Dominant (Perron) eigenpair of the discrete generator.
struct SpectralResult {
  /// Spectral bound s(A_h), the discrete Malthusian parameter.
  double malthus = 0.0;
  /// Stable size profile, normalized to unit total mass.
  PopulationState right_vector;
  /// Dual function ψ of the left eigenvector: the left eigenvector is w∘ψ,
  /// and Σ w_i ψ_i v_i = 1.
  PopulationState left_vector;
  /// ||A_h v - λ v||_X / ||v||_X.
  double residual = 0.0;
  /// max_i |(A_h^T (w∘ψ) - λ w∘ψ)_i / w_i| / max_i |ψ_i|.
  double left_residual = 0.0;
  int iterations = 0;
  bool irreducible = false;
  /// Final shift used by the inverse iteration.
  double shift = 0.0;
  /// Mass weights of the grid the pair lives on.
  std::vector<double> weights;

  /// Rank-one projection Π_h u = v <ψ, u>_w.
  PopulationState project(const PopulationState& u) const;
};

inline constexpr double kDefaultSpectralTol = 1e-10;
inline constexpr int kDefaultSpectralMaxIter = 10000;

/// Inverse power iteration on (σI - A_h)^{-1}. σ starts at omega_bound + 1
/// and is lowered using Collatz-Wielandt bounds of the positive iterate, so
/// it stays strictly above s(A_h) and the resolvent stays nonnegative.
///
/// Convergence is declared when the relative residual is below
/// max(tol, 64 eps ||A_h||_X). Throws ConvergenceError after max_iter
/// iterations and DegenerateError if the iterate vanishes.
SpectralResult spectral_bound(const GeneratorMatrix& g, double tol = kDefaultSpectralTol,
                              int max_iter = kDefaultSpectralMaxIter);

/// Strong connectivity of the graph of positive off-diagonal entries.
bool irreducibility_check(const GeneratorMatrix& g);
bool irreducibility_check(const Eigen::MatrixXd& a);

/// Least-squares slope of log(mass) against t over t_a <= t <= t_b.
/// Throws ArgumentError for an empty window or nonpositive masses.
double growth_rate_from_trajectory(const Trajectory& traj, double t_a, double t_b);

/// Weighted-norm distance between each mass-normalized snapshot and the
/// stable size profile, as (t, distance) pairs.
/// Throws ArgumentError if the trajectory has no snapshots or a snapshot has
/// nonpositive mass.
std::vector<std::pair<double, double>> aeg_diagnostic(const Trajectory& traj, const SpectralResult& spec);

}  // namespace sizepop
