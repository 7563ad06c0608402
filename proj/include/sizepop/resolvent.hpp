#pragma once

#include <cstdint>
#include <vector>

#include "sizepop/discretization.hpp"
#include "sizepop/linear_solve.hpp"
#include "sizepop/model.hpp"

namespace sizepop {

/// Smallest shift ω >= 0 for which both boundary compartments of the
/// recruitment-free operator are dissipative in the weighted norm:
///   max(0, γ(0)/c1 - (γ'(0) + μ(0) + c0), -γ(m)/c2 - (γ'(m) + μ(m) + cm)).
/// Zero for every model with conservative constants.
double omega_min(const Model& model);

/// Factorized resolvent (I - λ(Ã_h - ωI))^{-1} for repeated right-hand sides.
class ResolventSolver {
 public:
  /// `g_tilde` must carry no recruitment part. Throws ArgumentError for
  /// λ <= 0 or a nonzero recruitment part, SolveError on singularity.
  ResolventSolver(const GeneratorMatrix& g_tilde, double lambda, double omega);

  PopulationState solve(const PopulationState& rhs) const;

 private:
  DenseFactorization lu_;
  std::size_t size_;
};

/// Solves u - λ(Ã_h - ωI) u = h.
PopulationState solve_resolvent(const GeneratorMatrix& g_tilde, double lambda, double omega,
                                const PopulationState& h);

struct ResolventReport {
  double omega = 0.0;
  double omega_min = 0.0;
  /// λ at which max_ratio was attained.
  double lambda = 0.0;
  int samples = 0;
  /// max ||u||_X / ||h||_X over signed right-hand sides.
  double max_ratio = 0.0;
  /// Entries below -1e-12 in solutions for nonnegative right-hand sides.
  int positivity_violations = 0;
  /// Smallest entry over all solutions for nonnegative right-hand sides.
  double worst_entry = 0.0;
  std::uint64_t seed = 0;
  bool below_omega_min() const { return omega < omega_min; }
};

inline constexpr double kPositivityTolerance = 1e-12;

/// Randomized check of the resolvent estimate ||u||_X <= ||h||_X and of
/// resolvent positivity for the recruitment-free operator. For each λ, draws
/// `n_samples` right-hand sides uniform on [-1, 1] and as many uniform on
/// [0, 1], from a generator seeded with `seed`.
ResolventReport dissipativity_check(const Model& model, const Grid& grid, const std::vector<double>& lambdas,
                                    double omega, int n_samples, std::uint64_t seed);

}  // namespace sizepop
