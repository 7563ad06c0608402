#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sizepop/config.hpp"
#include "sizepop/evolution.hpp"
#include "sizepop/resolvent.hpp"

namespace sizepop {

struct CheckOptions {
  int samples = 100;
  /// Resolvent shift; defaults to omega_min(model).
  std::optional<double> omega;
  /// Random states for the balance identity.
  int balance_states = 1000;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<PropertyResult> properties;
  Trajectory trajectory;  // implicit Euler run used for positivity
  ResolventReport dissipativity;

  bool all_passed() const;
};

inline constexpr double kBalanceIdentityTol = 1e-12;
inline constexpr double kBalanceDriftTol = 1e-10;
inline constexpr double kDissipativityTol = 1e-10;
inline const std::vector<double> kDissipativityLambdas{0.01, 0.1, 1.0, 10.0, 100.0};

/// Runs the structural checks on a configuration:
///   conservation   Σ w (A_h u) = B - D (+ boundary source) on random states,
///                  and the balance drift of the configured run
///   positivity     implicit Euler run from the configured initial state
///                  stays >= -1e-12
///   dissipativity  resolvent ratio <= 1 + 1e-10 and no positivity
///                  violations for λ in {0.01, 0.1, 1, 10, 100}
CheckReport run_checks(const RunConfig& config, const CheckOptions& options = {});

}  // namespace sizepop
