#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sizepop {

// ---------------------------------------------------------------------------
// Coefficients μ(s), γ(s), d(s)
// ---------------------------------------------------------------------------

struct ConstantForm {
  double value = 0.0;
  bool operator==(const ConstantForm&) const = default;
};

/// Coefficients in ascending degree: c[0] + c[1] s + c[2] s^2 + ...
struct PolynomialForm {
  std::vector<double> coeffs;
  bool operator==(const PolynomialForm&) const = default;
};

struct Breakpoint {
  double s = 0.0;
  double v = 0.0;
  bool operator==(const Breakpoint&) const = default;
};

/// Piecewise linear interpolant through strictly increasing breakpoints.
struct TableForm {
  std::vector<Breakpoint> points;
  bool operator==(const TableForm&) const = default;
};

/// A scalar function of size with an evaluable derivative.
class Coefficient {
 public:
  using Form = std::variant<ConstantForm, PolynomialForm, TableForm>;

  Coefficient() : form_(ConstantForm{0.0}) {}

  static Coefficient constant(double value);
  static Coefficient polynomial(std::vector<double> coeffs);
  /// Throws ArgumentError unless there are at least two strictly increasing breakpoints.
  static Coefficient table(std::vector<Breakpoint> points);

  const Form& form() const { return form_; }

  bool operator==(const Coefficient&) const = default;

 private:
  explicit Coefficient(Form form) : form_(std::move(form)) {}
  Form form_;
};

/// Value at s. Throws DomainError if s is outside [0, m] or outside a table's breakpoints.
double eval(const Coefficient& coef, double s, double m);

/// Derivative at s. Tables use the slope of the segment to the right of s,
/// except at s = m where the segment to the left is used.
double eval_deriv(const Coefficient& coef, double s, double m);

// ---------------------------------------------------------------------------
// Recruitment kernel β(s, y)
// ---------------------------------------------------------------------------

struct SeparableKernel {
  Coefficient f;  // offspring size profile
  Coefficient g;  // parent size profile
  bool operator==(const SeparableKernel&) const = default;
};

/// Bilinear interpolation on a tensor grid; values[i][j] = β(s_nodes[i], y_nodes[j]).
struct GridKernel {
  std::vector<double> s_nodes;
  std::vector<double> y_nodes;
  std::vector<std::vector<double>> values;
  bool operator==(const GridKernel&) const = default;
};

class Kernel {
 public:
  using Form = std::variant<ConstantForm, SeparableKernel, GridKernel>;

  Kernel() : form_(ConstantForm{0.0}) {}

  static Kernel constant(double value);
  static Kernel separable(Coefficient f, Coefficient g);
  /// Throws ArgumentError on non-increasing nodes or a shape mismatch.
  static Kernel grid(std::vector<double> s_nodes, std::vector<double> y_nodes,
                     std::vector<std::vector<double>> values);

  const Form& form() const { return form_; }

  /// True for the constant zero kernel.
  bool is_zero() const;

  bool operator==(const Kernel&) const = default;

 private:
  explicit Kernel(Form form) : form_(std::move(form)) {}
  Form form_;
};

/// β(s, y); both arguments must lie in [0, m].
double eval(const Kernel& kernel, double s, double y, double m);

// ---------------------------------------------------------------------------
// Boundary constants and the model
// ---------------------------------------------------------------------------

/// Constants of the dynamic boundary conditions at s = 0 and s = m.
struct BoundaryConstants {
  double b0 = 1.0;
  double bm = 1.0;
  double c0 = 0.0;
  double cm = 0.0;
  /// Set by conservative_constants(). Enables the exact algebraic
  /// simplifications (unit norm weights, boundary rates = -μ).
  bool conservative = false;

  bool operator==(const BoundaryConstants&) const = default;
};

/// Weights of the boundary masses in the state norm.
struct NormWeights {
  double c1 = 1.0;
  double c2 = 1.0;
};

/// The continuous size-structured model on [0, m].
///
/// Immutable once constructed. The constructor evaluates the coefficients at
/// the endpoints (so tables must cover [0, m]) but does not check sign
/// conditions; use validate() for that.
class Model {
 public:
  Model(double m, Coefficient mu, Coefficient gamma, Coefficient d, Kernel beta,
        BoundaryConstants bc);

  double m() const { return m_; }
  const Coefficient& mu() const { return mu_; }
  const Coefficient& gamma() const { return gamma_; }
  const Coefficient& d() const { return d_; }
  const Kernel& beta() const { return beta_; }
  const BoundaryConstants& bc() const { return bc_; }
  double rho0() const { return rho0_; }
  double rhom() const { return rhom_; }

  double mu_at(double s) const { return eval(mu_, s, m_); }
  double gamma_at(double s) const { return eval(gamma_, s, m_); }
  double gamma_prime_at(double s) const { return eval_deriv(gamma_, s, m_); }
  double d_at(double s) const { return eval(d_, s, m_); }
  double beta_at(double s, double y) const { return eval(beta_, s, y, m_); }

  /// Same model with the recruitment kernel replaced.
  Model with_beta(Kernel beta) const;

  bool operator==(const Model&) const = default;

 private:
  double m_;
  Coefficient mu_;
  Coefficient gamma_;
  Coefficient d_;
  Kernel beta_;
  BoundaryConstants bc_;
  double rho0_;
  double rhom_;
};

/// Boundary constants that make total population invariant in the absence of
/// birth and death. Throws AdmissibilityError if b0, bm <= 0 or c0, cm < 0.
BoundaryConstants conservative_constants(const Coefficient& gamma, const Coefficient& d, double m);

/// c1 = d(0)/(b0 - γ(0)), c2 = d(m)/(γ(m) + bm); exactly (1, 1) for conservative constants.
/// Throws AdmissibilityError if a denominator is not positive.
NormWeights norm_weights(const Model& model);

/// Net per-capita rates of the boundary compartments with diffusive and
/// advective exchange through the first face removed:
///   left  = γ(0)/c1 - (γ'(0) + μ(0) + c0)
///   right = -γ(m)/c2 - (γ'(m) + μ(m) + cm)
/// Both reduce to -μ at the respective endpoint under conservative constants.
struct BoundaryRates {
  double left = 0.0;
  double right = 0.0;
};
BoundaryRates boundary_rates(const Model& model);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline constexpr int kDefaultValidationSamples = 257;

/// Checks sign conditions on a uniform sample grid, the boundary constant
/// invariants and the norm-weight denominators. Never throws.
ValidationReport validate(const Model& model, int samples = kDefaultValidationSamples);

/// Throws AdmissibilityError listing every violation if validate() fails.
void require_admissible(const Model& model);

}  // namespace sizepop
