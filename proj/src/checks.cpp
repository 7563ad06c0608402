#include "sizepop/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace sizepop {

bool CheckReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

namespace {

std::string describe(std::initializer_list<std::pair<const char*, double>> items) {
  std::ostringstream os;
  os.precision(3);
  bool first = true;
  for (const auto& [k, v] : items) {
    os << (first ? "" : ", ") << k << " = " << v;
    first = false;
  }
  return os.str();
}

/// Largest relative defect of Σ w (A u) = birth - death + boundary over random states.
double balance_identity_defect(const Model& model, const GeneratorMatrix& g, int states, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  PopulationState u(g.size());
  double worst = 0.0;
  for (int k = 0; k < states; ++k) {
    for (auto& v : u.values()) v = dist(rng);
    const auto au = apply_generator(g, u);
    const auto rates = birth_death_rates(model, g, u);
    const double lhs = total_mass(au, g);
    const double scale =
        weighted_norm(au, g) + std::abs(rates.birth) + std::abs(rates.death) + std::abs(rates.boundary);
    if (scale > 0.0) worst = std::max(worst, std::abs(lhs - rates.net()) / scale);
  }
  return worst;
}

}  // namespace

CheckReport run_checks(const RunConfig& config, const CheckOptions& options) {
  CheckReport report;
  const auto grid = config.grid();
  const auto g = assemble_generator(config.model, grid);
  const auto u0 = initial_state(config.initial, grid);

  auto sim = config.simulation_options();
  sim.scheme = Scheme::implicit_euler;
  report.trajectory = simulate(config.model, g, u0, sim);

  // The balance drift is checked on the configured scheme.
  double drift = report.trajectory.balance_drift;
  if (config.run.scheme != Scheme::implicit_euler) {
    drift = simulate(config.model, g, u0, config.simulation_options()).balance_drift;
  }
  const double defect = balance_identity_defect(config.model, g, options.balance_states, config.run.seed);
  report.properties.push_back({"conservation", defect <= kBalanceIdentityTol && drift <= kBalanceDriftTol,
                               describe({{"identity_defect", defect}, {"balance_drift", drift}})});

  const double min_entry = report.trajectory.min_entry;
  const double bq = recruitment_row_bound(g);
  report.properties.push_back({"positivity", min_entry >= -kPositivityTolerance,
                               describe({{"min_entry", min_entry}, {"dt*B_q", config.run.dt * bq}})});

  const double omega = options.omega.value_or(omega_min(config.model));
  report.dissipativity =
      dissipativity_check(config.model, grid, kDissipativityLambdas, omega, options.samples, config.run.seed);
  const auto& d = report.dissipativity;
  report.properties.push_back(
      {"dissipativity", d.max_ratio <= 1.0 + kDissipativityTol && d.positivity_violations == 0,
       describe({{"max_ratio", d.max_ratio},
                 {"violations", static_cast<double>(d.positivity_violations)},
                 {"omega", d.omega},
                 {"omega_min", d.omega_min}}) +
           (d.below_omega_min() ? " (omega below omega_min)" : "")});
  return report;
}

}  // namespace sizepop
