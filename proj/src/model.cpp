#include "sizepop/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sizepop/errors.hpp"

namespace sizepop {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_point(const char* what, double s) {
  std::ostringstream os;
  os << what << " " << s;
  return os.str();
}

void check_domain(double s, double m) {
  if (!(s >= 0.0 && s <= m)) {
    throw DomainError(format_point("evaluation point outside [0, m]: s =", s));
  }
}

/// Index k of the segment [x_k, x_{k+1}] holding s, preferring the right
/// segment at interior breakpoints. Requires x.front() <= s <= x.back().
template <class Key>
std::size_t segment_right(const std::vector<Key>& x, double s, double (*key)(const Key&)) {
  auto it = std::upper_bound(x.begin(), x.end(), s,
                             [key](double v, const Key& p) { return v < key(p); });
  auto k = static_cast<std::size_t>(it - x.begin());
  if (k == 0) k = 1;
  if (k >= x.size()) k = x.size() - 1;
  return k - 1;
}

double breakpoint_key(const Breakpoint& b) { return b.s; }
double identity_key(const double& v) { return v; }

void require_in_table(const TableForm& t, double s) {
  if (s < t.points.front().s || s > t.points.back().s) {
    throw DomainError(format_point("table coefficient does not cover s =", s));
  }
}

double table_value(const TableForm& t, double s) {
  require_in_table(t, s);
  if (s == t.points.back().s) return t.points.back().v;
  const auto k = segment_right(t.points, s, breakpoint_key);
  const auto& a = t.points[k];
  const auto& b = t.points[k + 1];
  return a.v + (b.v - a.v) * ((s - a.s) / (b.s - a.s));
}

double table_slope(const TableForm& t, double s, double m) {
  require_in_table(t, s);
  std::size_t k = segment_right(t.points, s, breakpoint_key);
  // At s = m take the segment ending at m.
  if (s == m && k > 0 && t.points[k].s == s) --k;
  if (s == t.points.back().s) k = t.points.size() - 2;
  const auto& a = t.points[k];
  const auto& b = t.points[k + 1];
  return (b.v - a.v) / (b.s - a.s);
}

void require_increasing(const std::vector<double>& x, const char* what) {
  if (x.size() < 2) throw ArgumentError(std::string(what) + " needs at least two nodes");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw ArgumentError(std::string(what) + " has a non-finite node");
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw ArgumentError(std::string(what) + " must be strictly increasing");
    }
  }
}

void require_grid_cover(const std::vector<double>& x, double v, const char* axis) {
  if (v < x.front() || v > x.back()) {
    throw DomainError(format_point((std::string("kernel grid does not cover ") + axis + " =").c_str(), v));
  }
}

}  // namespace

Coefficient Coefficient::constant(double value) { return Coefficient(ConstantForm{value}); }

Coefficient Coefficient::polynomial(std::vector<double> coeffs) {
  return Coefficient(PolynomialForm{std::move(coeffs)});
}

Coefficient Coefficient::table(std::vector<Breakpoint> points) {
  if (points.size() < 2) throw ArgumentError("table coefficient needs at least two breakpoints");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].s) || !std::isfinite(points[i].v)) {
      throw ArgumentError("table coefficient has a non-finite breakpoint");
    }
    if (i > 0 && !(points[i].s > points[i - 1].s)) {
      throw ArgumentError("table breakpoints must be strictly increasing");
    }
  }
  return Coefficient(TableForm{std::move(points)});
}

double eval(const Coefficient& coef, double s, double m) {
  check_domain(s, m);
  return std::visit(Overloaded{
                        [](const ConstantForm& c) { return c.value; },
                        [s](const PolynomialForm& p) {
                          double acc = 0.0;
                          for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * s + *it;
                          return acc;
                        },
                        [s](const TableForm& t) { return table_value(t, s); },
                    },
                    coef.form());
}

double eval_deriv(const Coefficient& coef, double s, double m) {
  check_domain(s, m);
  return std::visit(Overloaded{
                        [](const ConstantForm&) { return 0.0; },
                        [s](const PolynomialForm& p) {
                          double acc = 0.0;
                          for (std::size_t k = p.coeffs.size(); k-- > 1;) {
                            acc = acc * s + static_cast<double>(k) * p.coeffs[k];
                          }
                          return acc;
                        },
                        [s, m](const TableForm& t) { return table_slope(t, s, m); },
                    },
                    coef.form());
}

Kernel Kernel::constant(double value) { return Kernel(ConstantForm{value}); }

Kernel Kernel::separable(Coefficient f, Coefficient g) {
  return Kernel(SeparableKernel{std::move(f), std::move(g)});
}

Kernel Kernel::grid(std::vector<double> s_nodes, std::vector<double> y_nodes,
                    std::vector<std::vector<double>> values) {
  require_increasing(s_nodes, "kernel s-nodes");
  require_increasing(y_nodes, "kernel y-nodes");
  if (values.size() != s_nodes.size()) throw ArgumentError("kernel values must have one row per s-node");
  for (const auto& row : values) {
    if (row.size() != y_nodes.size()) throw ArgumentError("kernel values must have one column per y-node");
    for (double v : row) {
      if (!std::isfinite(v)) throw ArgumentError("kernel values must be finite");
    }
  }
  return Kernel(GridKernel{std::move(s_nodes), std::move(y_nodes), std::move(values)});
}

bool Kernel::is_zero() const {
  const auto* c = std::get_if<ConstantForm>(&form_);
  return c != nullptr && c->value == 0.0;
}

double eval(const Kernel& kernel, double s, double y, double m) {
  check_domain(s, m);
  check_domain(y, m);
  return std::visit(Overloaded{
                        [](const ConstantForm& c) { return c.value; },
                        [s, y, m](const SeparableKernel& k) { return eval(k.f, s, m) * eval(k.g, y, m); },
                        [s, y](const GridKernel& g) {
                          require_grid_cover(g.s_nodes, s, "s");
                          require_grid_cover(g.y_nodes, y, "y");
                          const auto i = segment_right(g.s_nodes, s, identity_key);
                          const auto j = segment_right(g.y_nodes, y, identity_key);
                          const double ts = (s - g.s_nodes[i]) / (g.s_nodes[i + 1] - g.s_nodes[i]);
                          const double ty = (y - g.y_nodes[j]) / (g.y_nodes[j + 1] - g.y_nodes[j]);
                          const double v00 = g.values[i][j];
                          const double v01 = g.values[i][j + 1];
                          const double v10 = g.values[i + 1][j];
                          const double v11 = g.values[i + 1][j + 1];
                          return (1.0 - ts) * ((1.0 - ty) * v00 + ty * v01) + ts * ((1.0 - ty) * v10 + ty * v11);
                        },
                    },
                    kernel.form());
}

Model::Model(double m, Coefficient mu, Coefficient gamma, Coefficient d, Kernel beta,
             BoundaryConstants bc)
    : m_(m),
      mu_(std::move(mu)),
      gamma_(std::move(gamma)),
      d_(std::move(d)),
      beta_(std::move(beta)),
      bc_(bc),
      rho0_(0.0),
      rhom_(0.0) {
  if (!(std::isfinite(m) && m > 0.0)) throw AdmissibilityError("maximum size m must be positive and finite");
  rho0_ = mu_at(0.0) + bc_.c0 + gamma_prime_at(0.0);
  rhom_ = mu_at(m_) + bc_.cm + gamma_prime_at(m_);
}

Model Model::with_beta(Kernel beta) const {
  return Model(m_, mu_, gamma_, d_, std::move(beta), bc_);
}

BoundaryConstants conservative_constants(const Coefficient& gamma, const Coefficient& d, double m) {
  const double g0 = eval(gamma, 0.0, m);
  const double gm = eval(gamma, m, m);
  const double gp0 = eval_deriv(gamma, 0.0, m);
  const double gpm = eval_deriv(gamma, m, m);
  BoundaryConstants bc;
  bc.b0 = eval(d, 0.0, m) + g0;
  bc.bm = eval(d, m, m) - gm;
  bc.c0 = g0 - gp0;
  bc.cm = -gm - gpm;
  bc.conservative = true;

  std::ostringstream why;
  if (!(bc.b0 > 0.0)) why << " b0 = d(0) + gamma(0) = " << bc.b0 << " must be positive;";
  if (!(bc.bm > 0.0)) why << " bm = d(m) - gamma(m) = " << bc.bm << " must be positive;";
  if (!(bc.c0 >= 0.0)) why << " c0 = gamma(0) - gamma'(0) = " << bc.c0 << " must be nonnegative;";
  if (!(bc.cm >= 0.0)) why << " cm = -gamma(m) - gamma'(m) = " << bc.cm << " must be nonnegative;";
  if (!why.str().empty()) {
    throw AdmissibilityError("growth rate admits no conservative boundary constants:" + why.str());
  }
  return bc;
}

NormWeights norm_weights(const Model& model) {
  const auto& bc = model.bc();
  const double m = model.m();
  if (bc.conservative) return {1.0, 1.0};
  const double den0 = bc.b0 - model.gamma_at(0.0);
  const double denm = model.gamma_at(m) + bc.bm;
  if (!(den0 > 0.0)) throw AdmissibilityError("b0 - gamma(0) must be positive");
  if (!(denm > 0.0)) throw AdmissibilityError("gamma(m) + bm must be positive");
  return {model.d_at(0.0) / den0, model.d_at(m) / denm};
}

BoundaryRates boundary_rates(const Model& model) {
  const double m = model.m();
  if (model.bc().conservative) return {-model.mu_at(0.0), -model.mu_at(m)};
  const auto w = norm_weights(model);
  return {model.gamma_at(0.0) / w.c1 - model.rho0(), -model.gamma_at(m) / w.c2 - model.rhom()};
}

ValidationReport validate(const Model& model, int samples) {
  ValidationReport report;
  auto& out = report.violations;
  const double m = model.m();
  const int n = std::max(samples, 2);
  const auto node = [&](int k) { return k == n - 1 ? m : m * static_cast<double>(k) / (n - 1); };

  const auto scan = [&](const char* message, auto&& value, auto&& bad) {
    try {
      for (int k = 0; k < n; ++k) {
        const double s = node(k);
        const double v = value(s);
        if (!std::isfinite(v) || bad(v)) {
          std::ostringstream os;
          os << message << " (value " << v << " at s = " << s << ")";
          out.push_back(os.str());
          return;
        }
      }
    } catch (const DomainError& e) {
      out.push_back(std::string(message) + ": " + e.what());
    }
  };
  scan("diffusion must be strictly positive", [&](double s) { return model.d_at(s); },
       [](double v) { return !(v > 0.0); });
  scan("mortality must be nonnegative", [&](double s) { return model.mu_at(s); },
       [](double v) { return v < 0.0; });
  scan("growth rate must be finite", [&](double s) { return model.gamma_at(s); },
       [](double) { return false; });
  scan("growth rate derivative must be finite", [&](double s) { return model.gamma_prime_at(s); },
       [](double) { return false; });

  if (!model.beta().is_zero()) {
    try {
      bool done = false;
      for (int i = 0; i < n && !done; ++i) {
        for (int j = 0; j < n && !done; ++j) {
          const double v = model.beta_at(node(i), node(j));
          if (!std::isfinite(v) || v < 0.0) {
            std::ostringstream os;
            os << "recruitment kernel must be nonnegative (value " << v << " at s = " << node(i)
               << ", y = " << node(j) << ")";
            out.push_back(os.str());
            done = true;
          }
        }
      }
    } catch (const DomainError& e) {
      out.push_back(std::string("recruitment kernel must be nonnegative: ") + e.what());
    }
  }

  const auto& bc = model.bc();
  if (!(bc.b0 > 0.0)) out.emplace_back("boundary constant b0 must be positive");
  if (!(bc.bm > 0.0)) out.emplace_back("boundary constant bm must be positive");
  if (!(bc.c0 >= 0.0)) out.emplace_back("boundary constant c0 must be nonnegative");
  if (!(bc.cm >= 0.0)) out.emplace_back("boundary constant cm must be nonnegative");
  if (!(bc.b0 - model.gamma_at(0.0) > 0.0)) out.emplace_back("b0 - gamma(0) must be positive");
  if (!(model.gamma_at(m) + bc.bm > 0.0)) out.emplace_back("gamma(m) + bm must be positive");
  return report;
}

void require_admissible(const Model& model) {
  const auto report = validate(model);
  if (report.ok()) return;
  std::string msg = "inadmissible model:";
  for (const auto& v : report.violations) msg += " " + v + ";";
  throw AdmissibilityError(msg);
}

}  // namespace sizepop
