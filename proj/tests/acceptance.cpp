// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sizepop/discretization.hpp"
#include "sizepop/evolution.hpp"
#include "sizepop/resolvent.hpp"
#include "sizepop/spectral.hpp"
#include "support/random_models.hpp"
#include "support/reference.hpp"

using namespace sizepop;
namespace t = sizepop::testing;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

Outcome conservation() {
  const auto model = t::growth_model(0.0, 0.0);
  const auto grid = build_grid(1.0, 200);
  PopulationState u0(grid.size());
  for (int i = 0; i <= grid.n; ++i) u0[i] = std::exp(-std::pow((grid.node(i) - 0.3) / 0.1, 2) / 2.0);
  SimulationOptions opt;
  opt.dt = 1e-2;
  opt.t_end = 100.0;
  opt.snapshot_stride = 1000;
  const auto traj = simulate(model, grid, u0, opt);
  const double drift = std::abs(traj.masses.back() - traj.masses.front()) / traj.masses.front();
  return {traj.times.size() == 10001 && drift <= 1e-10,
          "steps " + std::to_string(traj.times.size() - 1) + ", relative mass drift " + fmt(drift) + " (<= 1e-10)"};
}

Outcome positivity() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  double worst_dt_bq = 0.0;
  int failures = 0;
  int failures_below_abscissa = 0;  // failures with dt s(A) < 1 would be a solver bug
  for (int k = 0; k < 100; ++k) {
    const auto model = t::random_model(rng);
    const auto grid = build_grid(model.m(), 8 + static_cast<int>(rng() % 57));
    const auto g = assemble_generator(model, grid);
    const double bq = recruitment_row_bound(g);
    // Steps up to the stated threshold; without recruitment any step is allowed.
    const double dt = bq > 0.0 ? t::uniform(rng, 0.1, 0.99) / bq : t::uniform(rng, 1e-3, 1.0);
    auto u = t::random_state(rng, grid.size(), 0.0, 1.0);
    for (int z = 0; z < 3; ++z) u[rng() % grid.size()] = 0.0;
    // Near the threshold one step can multiply the mass by 1/(1 - dt s(A)), so
    // iterates are renormalized; the sign pattern is scale invariant.
    const TimeStepper stepper(g, Scheme::implicit_euler, dt);
    double lowest = u.min();
    for (int step = 0; step < 1000; ++step) {
      u = stepper.step(u);
      const double norm = weighted_norm(u, g);
      for (auto& v : u.values()) v /= norm;
      lowest = std::min(lowest, u.min());
    }
    worst = std::min(worst, lowest);
    worst_dt_bq = std::max(worst_dt_bq, dt * bq);
    if (lowest < -1e-12) {
      ++failures;
      if (dt * t::dense_spectrum(g.dense()).leading < 1.0) ++failures_below_abscissa;
    }
  }
  return {failures == 0, "100 models x 1000 implicit Euler steps (unit-norm iterates), max dt*B_q " +
                             fmt(worst_dt_bq) + ", min entry " + fmt(worst) + " (>= -1e-12), failing models " +
                             std::to_string(failures) + " (" + std::to_string(failures - failures_below_abscissa) +
                             " of them with dt*s(A) >= 1)"};
}

Outcome dissipativity() {
  std::mt19937_64 rng(77);
  const std::vector<double> lambdas{0.01, 0.1, 1.0, 10.0, 100.0};
  double max_ratio = 0.0;
  int violations = 0;
  int shifted = 0;
  const int models = 100;
  for (int k = 0; k < models; ++k) {
    const auto model = t::random_model(rng);
    const auto grid = build_grid(model.m(), 8 + static_cast<int>(rng() % 57));
    const double omega = omega_min(model);
    if (omega > 0.0) ++shifted;
    const auto rep = dissipativity_check(model, grid, lambdas, omega, 100, rng());
    max_ratio = std::max(max_ratio, rep.max_ratio);
    violations += rep.positivity_violations;
  }
  return {max_ratio <= 1.0 + 1e-10 && violations == 0,
          std::to_string(models) + " models (" + std::to_string(shifted) + " with omega_min > 0), max ratio " +
              fmt(max_ratio - 1.0) + " above 1 (<= 1e-10), positivity violations " + std::to_string(violations)};
}

Outcome exact_spectrum() {
  const auto death_g = assemble_generator(t::flat_model(1.0, 1.0, 0.3, 0.0), build_grid(1.0, 64));
  const auto death = spectral_bound(death_g);
  double spread = 0.0;
  for (double v : death.right_vector.values()) spread = std::max(spread, std::abs(v / death.right_vector[0] - 1.0));

  const auto birth = spectral_bound(assemble_generator(t::flat_model(1.0, 1.0, 0.0, 0.4), build_grid(1.0, 10)));

  std::vector<double> lam;
  for (int n : {64, 128, 256}) {
    lam.push_back(spectral_bound(assemble_generator(t::flat_model(1.0, 1.0, 0.0, 0.4), build_grid(1.0, n))).malthus);
  }
  const double order = std::log2((lam[1] - lam[0]) / (lam[2] - lam[1]));
  const double extrapolated = lam[2] + (lam[2] - lam[1]) / (std::pow(2.0, order) - 1.0);

  const double e_death = std::abs(death.malthus + 0.3);
  const double e_birth = std::abs(birth.malthus - 0.36);
  const double e_limit = std::abs(extrapolated - 0.4);
  return {e_death <= 1e-8 && spread <= 1e-8 && e_birth <= 1e-8 && e_limit <= 2e-3,
          "pure death error " + fmt(e_death) + " (profile spread " + fmt(spread) + "), pure birth N=10 error " +
              fmt(e_birth) + ", extrapolated " + std::to_string(extrapolated) + " (order " + std::to_string(order) +
              ", error " + fmt(e_limit) + ")"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(5150);
  double worst_apply = 0.0;
  double worst_eig = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto model = t::random_model(rng);
    const int n = 2 + static_cast<int>(rng() % 15);
    const auto g = assemble_generator(model, build_grid(model.m(), n));
    const auto ref = t::reference_assembly(model, n);
    for (int s = 0; s < 20; ++s) {
      const auto u = t::random_state(rng, g.size(), -1.0, 1.0);
      const Eigen::VectorXd want = ref.a * u.as_eigen();
      const Eigen::VectorXd scale = ref.a.cwiseAbs() * u.as_eigen().cwiseAbs();
      const auto got = apply_generator(g, u);
      worst_apply = std::max(worst_apply, (got.as_eigen() - want).cwiseAbs().maxCoeff() / scale.maxCoeff());
    }
    const auto dense = t::dense_spectrum(ref.a);
    worst_eig = std::max(worst_eig, std::abs(spectral_bound(g).malthus - dense.leading));
  }
  return {worst_apply <= 1e-12 && worst_eig <= 1e-8, "20 models, N <= 16: matvec relative error " +
                                                         fmt(worst_apply) + " (<= 1e-12), eigenvalue error " +
                                                         fmt(worst_eig) + " (<= 1e-8)"};
}

Outcome growth_bound() {
  std::mt19937_64 rng(31337);
  t::ModelGenOptions gen;
  gen.recruitment = t::RecruitmentKind::positive;
  double worst = 0.0;
  int accepted = 0;
  int rejected = 0;
  std::ostringstream rates;
  while (accepted < 10) {
    const auto model = t::random_model(rng, gen);
    const auto g = assemble_generator(model, build_grid(model.m(), 64));
    const auto dense = t::dense_spectrum(g.dense());
    // A relative tolerance needs a growth rate away from zero.
    if (std::abs(dense.leading) < 0.05) {
      ++rejected;
      continue;
    }
    const double t_a = 15.0 / dense.gap();
    const double t_b = t_a + 5.0;
    SimulationOptions opt;
    opt.dt = 1e-3;
    opt.t_end = t_b;
    opt.snapshot_stride = 1 << 30;
    const auto traj = simulate(model, g, t::random_state(rng, g.size(), 0.1, 1.0), opt);
    const double observed = growth_rate_from_trajectory(traj, t_a, t_b);
    const double malthus = spectral_bound(g).malthus;
    const double rel = std::abs(observed - malthus) / std::abs(malthus);
    worst = std::max(worst, rel);
    rates << (accepted ? ", " : "") << std::fixed << std::setprecision(3) << malthus;
    ++accepted;
  }
  return {worst <= 1e-3, "10 models (malthus " + rates.str() + "; " + std::to_string(rejected) +
                             " near-zero draws skipped), max relative error " + fmt(worst) + " (<= 1e-3)"};
}

Outcome async_growth() {
  const auto model = t::growth_model(0.1, 0.4);
  const auto g = assemble_generator(model, build_grid(1.0, 64));
  const auto spec = spectral_bound(g);
  const auto dense = t::dense_spectrum(g.dense());
  const double horizon = 20.0 / dense.gap();
  std::mt19937_64 rng(4242);
  double worst_final = 0.0;
  int non_monotone = 0;
  for (int k = 0; k < 5; ++k) {
    SimulationOptions opt;
    opt.dt = 1e-2;
    opt.t_end = horizon;
    opt.snapshot_stride = 10;
    const auto traj = simulate(model, g, t::random_state(rng, g.size(), 0.01, 1.0), opt);
    const auto series = aeg_diagnostic(traj, spec);
    worst_final = std::max(worst_final, series.back().second);
    for (std::size_t i = 1; i < series.size(); ++i) {
      if (series[i].first >= horizon / 10.0 && !(series[i].second < series[i - 1].second)) ++non_monotone;
    }
  }
  return {worst_final <= 1e-4 && non_monotone == 0,
          "horizon 20/gap = " + std::to_string(horizon) + ", 5 starts, max final distance " + fmt(worst_final) +
              " (<= 1e-4), non-decreasing steps in the last decade " + std::to_string(non_monotone)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "conservation", 10.0, conservation},
      {2, "positivity", 60.0, positivity},
      {3, "dissipativity", 60.0, dissipativity},
      {4, "exact spectral values", 10.0, exact_spectrum},
      {5, "oracle equivalence", 1e9, oracle_equivalence},
      {6, "growth-bound identity", 120.0, growth_bound},
      {7, "asynchronous exponential growth", 1e9, async_growth},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool ok = out.passed && in_time;
    if (!ok) ++failed;
    std::printf("%s %d %s: %s; %.2f s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs,
                in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
