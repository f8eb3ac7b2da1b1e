#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arctn/cubature.hpp"

namespace arctn {

/// A test integrand for the reduction checks. Arity 0 means the function is
/// defined for any number of variables.
struct RegisteredIntegrand {
  std::string name;
  std::string formula;
  int arity = 0;
  /// Checks are valid for 0 <= alpha < bound.
  double bound = 0.0;
  bool separable = false;
  Integrand f;
  /// Closed-form value of the alpha-hypercube integral in n_vars variables,
  /// when one is known.
  std::function<std::optional<double>(double alpha, int n_vars)> exact;

  bool accepts_arity(int n_vars) const { return arity == 0 || arity == n_vars; }
};

/// The fixed registry, in listing order: const_one, product_xy,
/// exp_neg_sum_squares, exp_neg_sum_cubes, rational_arctan3,
/// polynomial_mixed.
const std::vector<RegisteredIntegrand>& integrand_registry();

/// Throws std::invalid_argument for names not in the registry.
const RegisteredIntegrand& find_integrand(const std::string& name);

/// Raised when the engine fails on one side of a reduction check.
class SideFailure : public std::runtime_error {
 public:
  SideFailure(std::string side, const std::string& what)
      : std::runtime_error(side + ": " + what), side_(std::move(side)) {}
  const std::string& side() const { return side_; }

 private:
  std::string side_;
};

struct ReductionReport {
  EvalResult lhs;
  EvalResult rhs;
  double residual = 0.0;
  double alpha = 0.0;
  int n_vars = 0;
  /// Closed-form lhs from the registry, if known at this alpha.
  std::optional<double> exact;

  bool pass() const { return std::abs(residual) <= 10.0 * (lhs.error_estimate + rhs.error_estimate); }
};

/// Two-variable reduction: the alpha-square integral of f against
/// integral_0^1 dx integral_0^alpha beta {f(beta, beta x) + f(beta x, beta)} dbeta,
/// the latter as one 2-D cubature over [0,1] x [0,alpha].
ReductionReport reduce_check_f1(const std::string& integrand, double alpha, const QuadratureConfig& cfg);

/// n_vars-variable reduction (2 <= n_vars <= 4): the alpha-hypercube integral
/// against the integral over [0,1]^(n_vars-1) x [0,alpha] of
/// beta^(n_vars-1) * sum_p f(beta y_1, ..., beta, ..., beta y_{n_vars-1}) with
/// beta in slot p.
ReductionReport reduce_check_f2(const std::string& integrand, int n_vars, double alpha,
                                const QuadratureConfig& cfg);

/// beta^(n_vars-1) * sum_p f(beta y_1, ..., beta, ..., beta y_{n_vars-1})
/// as a function of the point (y_1, ..., y_{n_vars-1}, beta), beta in slot p
/// of the p-th term. Integrating it over [0,1]^(n_vars-1) x [0,alpha] gives
/// the alpha-hypercube integral of f. f must outlive the result.
Integrand radial_reduction(const Integrand& f, int n_vars);

/// integral_0^x exp(-t^p) dt = lower_gamma(1/p, x^p) / p, by the
/// positive-term series of the lower incomplete gamma function.
double exp_power_partial(double x, int p);

}  // namespace arctn
