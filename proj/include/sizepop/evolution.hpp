#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sizepop/discretization.hpp"
#include "sizepop/linear_solve.hpp"
#include "sizepop/model.hpp"

namespace sizepop {

enum class Scheme { implicit_euler, crank_nicolson };

const char* scheme_name(Scheme scheme);
/// Accepts "implicit_euler" and "crank_nicolson". Throws ArgumentError otherwise.
Scheme parse_scheme(const std::string& name);

/// Factorized one-step map for u' = A_h u with a fixed step.
///
/// Implicit Euler solves (I - dt A) u+ = u; Crank-Nicolson solves
/// (I - dt/2 A) u+ = (I + dt/2 A) u. Implicit Euler maps nonnegative states to
/// nonnegative states whenever dt s(A_h) < 1; Crank-Nicolson carries no such
/// guarantee.
class TimeStepper {
 public:
  TimeStepper(const GeneratorMatrix& g, Scheme scheme, double dt);

  PopulationState step(const PopulationState& u) const;

  /// Re-factorizes only if dt changed.
  void set_dt(double dt);

  double dt() const { return dt_; }
  Scheme scheme() const { return scheme_; }

 private:
  void factorize();

  GeneratorMatrix g_;
  Scheme scheme_;
  double dt_;
  DenseFactorization lu_;
};

/// Throws SolveError if I - dt A_h is numerically singular.
PopulationState step_implicit_euler(const GeneratorMatrix& g, const PopulationState& u, double dt);
PopulationState step_crank_nicolson(const GeneratorMatrix& g, const PopulationState& u, double dt);

struct Trajectory {
  std::vector<double> times;   // k dt, one per step including t = 0
  std::vector<double> masses;  // total mass at every step
  std::vector<std::pair<double, double>> boundary_series;  // (u_0, u_N) at every step
  std::vector<std::size_t> snapshot_steps;  // step indices of the stored snapshots
  std::vector<PopulationState> snapshots;
  /// Smallest entry seen over all steps and nodes.
  double min_entry = 0.0;
  /// max_k |mass_k - mass_0 - accumulated net rate| / |mass_0|: deviation
  /// from the discrete birth/death balance. For β = μ = 0 with conservative
  /// constants this is the relative mass drift.
  double balance_drift = 0.0;
  std::vector<std::string> warnings;

  double snapshot_time(std::size_t k) const { return times[snapshot_steps[k]]; }
  const PopulationState& final_state() const { return snapshots.back(); }
};

struct SimulationOptions {
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::implicit_euler;
  int snapshot_stride = 1;
  /// Population runs require u0 >= 0; verification runs may pass signed states.
  bool population_run = true;
};

/// Integrates from t = 0 to the first multiple of dt >= t_end. Snapshots are
/// stored every `snapshot_stride` steps and at the final step.
/// Throws ArgumentError on bad options, SolveError, or NonFiniteError.
Trajectory simulate(const Model& model, const Grid& grid, const PopulationState& u0,
                    const SimulationOptions& options);

/// Same, reusing an assembled generator.
Trajectory simulate(const Model& model, const GeneratorMatrix& g, const PopulationState& u0,
                    const SimulationOptions& options);

}  // namespace sizepop
