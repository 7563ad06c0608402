#include "sizepop/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sizepop/errors.hpp"

namespace sizepop {

namespace {

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected size " + std::to_string(want) + ", got " +
                         std::to_string(got));
  }
}

}  // namespace

std::vector<double> Grid::nodes() const {
  std::vector<double> s(size());
  for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(i)] = node(i);
  return s;
}

Grid build_grid(double m, int n) {
  if (!(std::isfinite(m) && m > 0.0)) throw ArgumentError("grid length m must be positive");
  if (n < 2) throw ArgumentError("grid needs N >= 2 (at least one interior node), got N = " + std::to_string(n));
  return Grid{m, n, m / n};
}

double PopulationState::min() const {
  if (values_.empty()) return 0.0;
  return *std::min_element(values_.begin(), values_.end());
}

bool PopulationState::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GeneratorMatrix::GeneratorMatrix(Grid grid, std::vector<double> lower, std::vector<double> diag,
                                 std::vector<double> upper, Eigen::MatrixXd recruitment,
                                 std::vector<double> weights, double boundary_exchange_left,
                                 double boundary_exchange_right, std::vector<double> mortality)
    : grid_(grid),
      lower_(std::move(lower)),
      diag_(std::move(diag)),
      upper_(std::move(upper)),
      recruitment_(std::move(recruitment)),
      weights_(std::move(weights)),
      exchange_left_(boundary_exchange_left),
      exchange_right_(boundary_exchange_right),
      mortality_(std::move(mortality)) {
  const std::size_t n = grid_.size();
  require_size(diag_.size(), n, "generator diagonal");
  require_size(lower_.size(), n - 1, "generator sub-diagonal");
  require_size(upper_.size(), n - 1, "generator super-diagonal");
  require_size(weights_.size(), n, "mass weights");
  if (recruitment_.size() == 0) recruitment_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  require_size(static_cast<std::size_t>(recruitment_.rows()), n, "recruitment rows");
  require_size(static_cast<std::size_t>(recruitment_.cols()), n, "recruitment columns");
  has_recruitment_ = (recruitment_.array() != 0.0).any();

  omega_bound_ = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    double row = diag_[i] + recruitment_(ii, ii);
    if (i > 0) row += std::abs(lower_[i - 1] + recruitment_(ii, ii - 1));
    if (i + 1 < n) row += std::abs(upper_[i] + recruitment_(ii, ii + 1));
    for (std::size_t j = 0; j < n; ++j) {
      if (j + 1 >= i && j <= i + 1) continue;
      row += std::abs(recruitment_(ii, static_cast<Eigen::Index>(j)));
    }
    omega_bound_ = std::max(omega_bound_, row);
  }

  if (!mortality_.empty()) {
    require_size(mortality_.size(), n, "nodal mortality");
    const Eigen::Map<const Eigen::RowVectorXd> w(weights_.data(), static_cast<Eigen::Index>(n));
    const Eigen::RowVectorXd births = w * recruitment_;
    mass_rates_.resize(n);
    for (std::size_t j = 0; j < n; ++j) mass_rates_[j] = births(static_cast<Eigen::Index>(j)) - weights_[j] * mortality_[j];
    mass_rates_.front() += exchange_left_;
    mass_rates_.back() += exchange_right_;
  }
}

Eigen::MatrixXd GeneratorMatrix::local_dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    a(i, i) = diag_[k];
    if (i > 0) a(i, i - 1) = lower_[k - 1];
    if (i + 1 < n) a(i, i + 1) = upper_[k];
  }
  return a;
}

Eigen::MatrixXd GeneratorMatrix::dense() const { return local_dense() + recruitment_; }

GeneratorMatrix GeneratorMatrix::without_recruitment() const {
  return GeneratorMatrix(grid_, lower_, diag_, upper_, Eigen::MatrixXd(), weights_, exchange_left_,
                         exchange_right_, mortality_);
}

GeneratorMatrix assemble_generator(const Model& model, const Grid& grid) {
  if (grid.m != model.m()) throw ArgumentError("grid length differs from the model's maximum size");
  require_admissible(model);

  const int n = grid.n;
  const double h = grid.h;
  const auto size = grid.size();
  const auto weights_c = norm_weights(model);
  const auto rates = boundary_rates(model);

  // Face flux F_{i+1/2} = p_i u_i + q_i u_{i+1} with upwinded advection.
  std::vector<double> p(static_cast<std::size_t>(n));
  std::vector<double> q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s_face = (static_cast<double>(i) + 0.5) * h;
    const double gamma = model.gamma_at(s_face);
    const double diff = model.d_at(s_face) / h;
    p[static_cast<std::size_t>(i)] = std::max(gamma, 0.0) + diff;
    q[static_cast<std::size_t>(i)] = std::min(gamma, 0.0) - diff;
  }

  std::vector<double> lower(size - 1, 0.0);
  std::vector<double> diag(size, 0.0);
  std::vector<double> upper(size - 1, 0.0);

  // Boundary compartment at s = 0: -F_{1/2}/c1 + κ0 u_0.
  diag[0] = -p[0] / weights_c.c1 + rates.left;
  upper[0] = -q[0] / weights_c.c1;

  for (int i = 1; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    lower[k - 1] = p[k - 1] / h;
    diag[k] = (q[k - 1] - p[k]) / h - model.mu_at(grid.node(i));
    upper[k] = -q[k] / h;
  }

  // Boundary compartment at s = m: +F_{N-1/2}/c2 + κm u_N.
  const auto last = static_cast<std::size_t>(n);
  lower[last - 1] = p[last - 1] / weights_c.c2;
  diag[last] = q[last - 1] / weights_c.c2 + rates.right;

  Eigen::MatrixXd recruitment;
  if (!model.beta().is_zero()) {
    const auto dim = static_cast<Eigen::Index>(size);
    recruitment = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i <= n; ++i) {
      for (int j = 1; j < n; ++j) {
        recruitment(i, j) = h * model.beta_at(grid.node(i), grid.node(j));
      }
    }
  }

  std::vector<double> mortality(size);
  for (int i = 0; i <= n; ++i) mortality[static_cast<std::size_t>(i)] = model.mu_at(grid.node(i));

  std::vector<double> weights(size, h);
  weights.front() = weights_c.c1;
  weights.back() = weights_c.c2;

  const double exchange_left = weights_c.c1 * (rates.left + model.mu_at(0.0));
  const double exchange_right = weights_c.c2 * (rates.right + model.mu_at(grid.m));
  return GeneratorMatrix(grid, std::move(lower), std::move(diag), std::move(upper), std::move(recruitment),
                         std::move(weights), exchange_left, exchange_right, std::move(mortality));
}

PopulationState apply_generator(const GeneratorMatrix& g, const PopulationState& u) {
  const std::size_t n = g.size();
  require_size(u.size(), n, "state");
  const auto diag = g.diag();
  const auto lower = g.lower();
  const auto upper = g.upper();
  PopulationState out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * u[i];
    if (i > 0) v += lower[i - 1] * u[i - 1];
    if (i + 1 < n) v += upper[i] * u[i + 1];
    out[i] = v;
  }
  if (g.has_recruitment()) {
    Eigen::Map<Eigen::VectorXd> o(out.values().data(), static_cast<Eigen::Index>(n));
    o.noalias() += g.recruitment() * u.as_eigen();
  }
  return out;
}

double total_mass(const PopulationState& u, const GeneratorMatrix& g) {
  require_size(u.size(), g.size(), "state");
  const auto w = g.weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += w[i] * u[i];
  return acc;
}

double weighted_norm(const PopulationState& u, const GeneratorMatrix& g) {
  require_size(u.size(), g.size(), "state");
  const auto w = g.weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += w[i] * std::abs(u[i]);
  return acc;
}

BalanceRates birth_death_rates(const Model& model, const GeneratorMatrix& g, const PopulationState& u) {
  require_size(u.size(), g.size(), "state");
  const auto& grid = g.grid();
  const auto w = g.weights();
  BalanceRates r;
  if (g.has_recruitment()) {
    const Eigen::VectorXd ku = g.recruitment() * u.as_eigen();
    for (std::size_t i = 0; i < u.size(); ++i) r.birth += w[i] * ku(static_cast<Eigen::Index>(i));
  }
  for (int i = 0; i <= grid.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r.death += w[k] * model.mu_at(grid.node(i)) * u[k];
  }
  r.boundary = g.boundary_exchange_left() * u[0] + g.boundary_exchange_right() * u[u.size() - 1];
  return r;
}

double recruitment_row_bound(const GeneratorMatrix& g) {
  if (!g.has_recruitment()) return 0.0;
  return g.recruitment().rowwise().sum().maxCoeff();
}

double recruitment_norm(const GeneratorMatrix& g) {
  if (!g.has_recruitment()) return 0.0;
  const auto w = g.weights();
  const Eigen::Map<const Eigen::RowVectorXd> wr(w.data(), static_cast<Eigen::Index>(w.size()));
  const Eigen::RowVectorXd col = wr * g.recruitment().cwiseAbs();
  double best = 0.0;
  for (Eigen::Index j = 0; j < col.size(); ++j) best = std::max(best, col(j) / wr(j));
  return best;
}

}  // namespace sizepop
