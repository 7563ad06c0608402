#pragma once

// Hand-rolled generators of admissible models for property tests.

#include <algorithm>
#include <random>
#include <vector>

#include "sizepop/discretization.hpp"
#include "sizepop/model.hpp"

namespace sizepop::testing {

enum class BoundaryKind { conservative, explicit_constants, either };
enum class RecruitmentKind { none, positive, any };

struct ModelGenOptions {
  BoundaryKind boundary = BoundaryKind::either;
  RecruitmentKind recruitment = RecruitmentKind::any;
  bool with_mortality = true;
  double m_min = 0.5;
  double m_max = 2.0;
  double d_min = 0.1;
};

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline bool coin(std::mt19937_64& rng) { return std::bernoulli_distribution(0.5)(rng); }

/// Strictly positive coefficient on [0, m]: a linear polynomial or a table.
inline Coefficient random_positive(std::mt19937_64& rng, double m, double lo, double hi) {
  if (coin(rng)) {
    const double v0 = uniform(rng, lo, hi);
    const double v1 = uniform(rng, lo, hi);
    return Coefficient::polynomial({v0, (v1 - v0) / m});
  }
  const int k = 3 + static_cast<int>(rng() % 3);
  std::vector<Breakpoint> pts;
  for (int i = 0; i < k; ++i) pts.push_back({i == k - 1 ? m : m * i / (k - 1), uniform(rng, lo, hi)});
  return Coefficient::table(pts);
}

inline Kernel random_positive_kernel(std::mt19937_64& rng, double m) {
  switch (rng() % 3) {
    case 0:
      return Kernel::constant(uniform(rng, 0.05, 1.0));
    case 1:
      return Kernel::separable(random_positive(rng, m, 0.2, 1.0), random_positive(rng, m, 0.1, 1.0));
    default: {
      const std::vector<double> nodes{0.0, 0.5 * m, m};
      std::vector<std::vector<double>> vals(3, std::vector<double>(3));
      for (auto& row : vals) {
        for (auto& v : row) v = uniform(rng, 0.05, 1.0);
      }
      return Kernel::grid(nodes, nodes, vals);
    }
  }
}

/// A random model that passes validate(). Growth is linear,
/// γ(s) = g0 - k s, with g0 drawn inside the conservative window.
inline Model random_model(std::mt19937_64& rng, const ModelGenOptions& opt = {}) {
  const double m = uniform(rng, opt.m_min, opt.m_max);
  const auto d = random_positive(rng, m, opt.d_min, 1.0);
  const double d0 = eval(d, 0.0, m);
  const double dm = eval(d, m, m);

  const double k = coin(rng) ? uniform(rng, 0.0, 1.0) : 0.0;
  const double g_lo = std::max(-k, -0.9 * d0);
  const double g_hi = std::min(k * (m + 1.0), 0.99 * (dm + k * m));
  const double g0 = g_hi > g_lo ? uniform(rng, g_lo, g_hi) : 0.0;
  const auto gamma = Coefficient::polynomial({g0, -k});

  Coefficient mu = Coefficient::constant(0.0);
  if (opt.with_mortality) {
    mu = coin(rng) ? Coefficient::constant(uniform(rng, 0.0, 0.5)) : random_positive(rng, m, 0.0, 0.5);
  }

  Kernel beta = Kernel::constant(0.0);
  const bool recruit = opt.recruitment == RecruitmentKind::positive ||
                       (opt.recruitment == RecruitmentKind::any && coin(rng));
  if (recruit) beta = random_positive_kernel(rng, m);

  bool conservative = opt.boundary == BoundaryKind::conservative;
  if (opt.boundary == BoundaryKind::either) conservative = coin(rng);
  BoundaryConstants bc;
  if (conservative) {
    bc = conservative_constants(gamma, d, m);
  } else {
    const double gm = g0 - k * m;
    bc.b0 = std::max(g0, 0.0) + uniform(rng, 0.1, 2.0);
    bc.bm = std::max(-gm, 0.0) + uniform(rng, 0.1, 2.0);
    bc.c0 = uniform(rng, 0.0, 1.0);
    bc.cm = uniform(rng, 0.0, 1.0);
  }
  return Model(m, mu, gamma, d, beta, bc);
}

inline PopulationState random_state(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  PopulationState u(n);
  for (auto& v : u.values()) v = uniform(rng, lo, hi);
  return u;
}

/// γ = 0.5 (1 - s), μ = mu0, β = beta0, d = 0.2, conservative, m = 1.
inline Model growth_model(double mu0, double beta0) {
  const auto gamma = Coefficient::polynomial({0.5, -0.5});
  const auto d = Coefficient::constant(0.2);
  return Model(1.0, Coefficient::constant(mu0), gamma, d, Kernel::constant(beta0),
               conservative_constants(gamma, d, 1.0));
}

/// γ = 0, d = d0, constant μ and β, conservative.
inline Model flat_model(double m, double d0, double mu0, double beta0) {
  const auto gamma = Coefficient::constant(0.0);
  const auto d = Coefficient::constant(d0);
  return Model(m, Coefficient::constant(mu0), gamma, d, Kernel::constant(beta0), conservative_constants(gamma, d, m));
}

}  // namespace sizepop::testing
