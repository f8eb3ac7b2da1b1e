#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "arctn/cubature.hpp"
#include "arctn/special_functions.hpp"
#include "arctn/types.hpp"

namespace arctn {

/// Engine defaults for the (n - 1)-dimensional integrals of order n.
QuadratureConfig default_config(Order n);

/// 1 / (1 + x_1^n + ... + x_{n-1}^n).
double arctan_integrand(int n, std::span<const double> x);

/// The n-th order arctangent: integral of arctan_integrand over
/// (0,u_1) x ... x (0,u_{n-1}).
///
/// Zero arguments are accepted and give exactly 0 without touching the
/// engine. If the first attempt does not converge the integral is retried
/// once with four times the budget; evals counts both attempts.
EvalResult eval_arctan(Order n, const ArgVector& args, const QuadratureConfig& cfg);

/// Entry k becomes u_k / u_p, entry p becomes 1 / u_p (p is 1-based).
ArgVector reflection_args(Order n, const ArgVector& args, std::size_t p);

/// Raised when one term of a multi-term combination fails; term() is the
/// 0-based index (0 is the unreflected term, p the p-th reflection).
class TermFailure : public std::runtime_error {
 public:
  TermFailure(std::size_t term, const std::string& what)
      : std::runtime_error("term " + std::to_string(term) + ": " + what), term_(term) {}
  std::size_t term() const { return term_; }

 private:
  std::size_t term_;
};

/// The n terms of the functional relation, in index order.
std::vector<EvalResult> functional_terms(Order n, const ArgVector& args, const QuadratureConfig& cfg);

/// arctan_n(args) + sum_p arctan_n(reflection_args(args, p)); the error
/// estimate is the sum of the term estimates.
EvalResult functional_sum(Order n, const ArgVector& args, const QuadratureConfig& cfg);

/// functional_sum(...).value - C_n.
double functional_residual(Order n, const ArgVector& args, const QuadratureConfig& cfg);

/// arctan_n(1, ..., 1), equal to (Gamma(1/n)/n)^n.
EvalResult unit_cube_value(Order n, const QuadratureConfig& cfg);

/// The defining integral over the whole positive orthant, equal to C_n.
///
/// For n >= 3 the orthant is first reduced radially (the hypercube
/// reduction with alpha -> inf), leaving (y_1..y_{n-2}) in the unit cube and
/// one unbounded axis beta whose mapped integrand stays bounded. Mapping
/// every axis to the unit interval instead leaves an s^(2-n) singularity at
/// the far corner.
EvalResult full_space_value(Order n, const QuadratureConfig& cfg);

/// Same integral with every axis mapped through x = t/(1-t). Only practical
/// for n <= 3; kept as an independent route for cross-checks.
EvalResult full_space_value_direct(Order n, const QuadratureConfig& cfg);

/// F(u) = arctan_n(u, ..., u) + (n - 1) arctan_n(u, 1, ..., 1).
EvalResult eval_F(Order n, double u, const QuadratureConfig& cfg);

/// Phi(u, v) = arctan_4(u, v, u/v) + arctan_4(u/v, 1/v, u/v^2).
EvalResult eval_phi4(double u, double v, const QuadratureConfig& cfg);

/// The four argument triples of the order-4 relation at (u, v, u/v), in the
/// order they are usually written: (u, v, u/v), (1/u, v/u, 1/v),
/// (u/v, 1/v, u/v^2), (v, v^2/u, v/u).
std::array<ArgVector, 4> order4_printed_triples(double u, double v);

/// True when a and b hold the same values up to permutation, comparing the
/// sorted entries to relative tolerance rel_tol.
bool same_multiset(const ArgVector& a, const ArgVector& b, double rel_tol = 1e-14);

}  // namespace arctn
