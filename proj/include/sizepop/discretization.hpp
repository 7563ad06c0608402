#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sizepop/model.hpp"

namespace sizepop {

/// Uniform vertex-centred grid s_i = i h, i = 0..N. Nodes 0 and N are the
/// boundary compartments.
struct Grid {
  double m = 1.0;
  int n = 2;
  double h = 0.5;

  std::size_t size() const { return static_cast<std::size_t>(n) + 1; }
  /// s_i, with s_N = m exactly.
  double node(int i) const { return i == n ? m : static_cast<double>(i) * h; }
  std::vector<double> nodes() const;
};

/// Throws ArgumentError unless m > 0 and n >= 2.
Grid build_grid(double m, int n);

/// Discrete population: index 0 is the mass at s = 0, indices 1..N-1 are
/// nodal densities, index N is the mass at s = m.
class PopulationState {
 public:
  PopulationState() = default;
  explicit PopulationState(std::size_t size, double fill = 0.0) : values_(size, fill) {}
  explicit PopulationState(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  const std::vector<double>& vector() const { return values_; }

  Eigen::Map<const Eigen::VectorXd> as_eigen() const {
    return {values_.data(), static_cast<Eigen::Index>(values_.size())};
  }
  static PopulationState from_eigen(const Eigen::VectorXd& v) {
    return PopulationState(std::vector<double>(v.data(), v.data() + v.size()));
  }

  double min() const;
  bool all_finite() const;

  bool operator==(const PopulationState&) const = default;

 private:
  std::vector<double> values_;
};

/// Discrete generator A_h = local + recruitment.
///
/// The local part is tridiagonal (advection, diffusion, mortality and the
/// boundary compartments); the recruitment part is dense with zero columns 0
/// and N. Off-diagonal entries of both parts are nonnegative.
class GeneratorMatrix {
 public:
  /// Band storage: lower[i-1] = A(i, i-1), upper[i] = A(i, i+1).
  GeneratorMatrix(Grid grid, std::vector<double> lower, std::vector<double> diag,
                  std::vector<double> upper, Eigen::MatrixXd recruitment, std::vector<double> weights,
                  double boundary_exchange_left = 0.0, double boundary_exchange_right = 0.0,
                  std::vector<double> mortality = {});

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return diag_.size(); }

  std::span<const double> lower() const { return lower_; }
  std::span<const double> diag() const { return diag_; }
  std::span<const double> upper() const { return upper_; }
  const Eigen::MatrixXd& recruitment() const { return recruitment_; }
  bool has_recruitment() const { return has_recruitment_; }

  /// Mass weights (c1, h, ..., h, c2).
  std::span<const double> weights() const { return weights_; }

  /// Gershgorin upper bound on the spectral abscissa.
  double omega_bound() const { return omega_bound_; }

  /// Per-capita boundary source terms left out of the birth/death balance:
  /// c1 (κ0 + μ(0)) and c2 (κm + μ(m)). Zero under conservative constants.
  double boundary_exchange_left() const { return exchange_left_; }
  double boundary_exchange_right() const { return exchange_right_; }

  /// μ(s_i) at the nodes; empty for hand-built matrices.
  std::span<const double> mortality() const { return mortality_; }

  /// Per-column net mass rates r with Σ_i w_i (A_h u)_i = Σ_j r_j u_j, built
  /// from the birth, death and boundary terms rather than from the assembled
  /// entries. Empty when the mortality is unknown.
  std::span<const double> mass_rates() const { return mass_rates_; }

  /// Local tridiagonal part as a dense matrix.
  Eigen::MatrixXd local_dense() const;
  /// local + recruitment as a dense matrix.
  Eigen::MatrixXd dense() const;

  /// Same matrix with the recruitment part removed (the operator Ã_h).
  GeneratorMatrix without_recruitment() const;

 private:
  Grid grid_;
  std::vector<double> lower_;
  std::vector<double> diag_;
  std::vector<double> upper_;
  Eigen::MatrixXd recruitment_;
  bool has_recruitment_ = false;
  std::vector<double> weights_;
  double omega_bound_ = 0.0;
  double exchange_left_ = 0.0;
  double exchange_right_ = 0.0;
  std::vector<double> mortality_;
  std::vector<double> mass_rates_;
};

/// Flux-form assembly. Throws AdmissibilityError if the model is inadmissible.
GeneratorMatrix assemble_generator(const Model& model, const Grid& grid);

/// (local + recruitment) u. Throws DimensionError on a size mismatch.
PopulationState apply_generator(const GeneratorMatrix& g, const PopulationState& u);

/// Σ w_i u_i (signed).
double total_mass(const PopulationState& u, const GeneratorMatrix& g);

/// Σ w_i |u_i|, the discrete state norm.
double weighted_norm(const PopulationState& u, const GeneratorMatrix& g);

struct BalanceRates {
  double birth = 0.0;     // Σ w_i (K u)_i
  double death = 0.0;     // Σ w_i μ(s_i) u_i
  double boundary = 0.0;  // boundary source, zero for conservative constants
  double net() const { return birth - death + boundary; }
};

/// Birth and death rates of the state. The identity
/// Σ w_i (A_h u)_i = birth - death + boundary holds for every u.
BalanceRates birth_death_rates(const Model& model, const GeneratorMatrix& g, const PopulationState& u);

/// B_q = max_i Σ_j K_ij, the largest recruitment row sum.
double recruitment_row_bound(const GeneratorMatrix& g);

/// max_j (Σ_i w_i K_ij) / w_j, the recruitment norm induced by the state norm.
double recruitment_norm(const GeneratorMatrix& g);

}  // namespace sizepop
