#pragma once

#include "arctn/cubature.hpp"
#include "arctn/types.hpp"

namespace arctn {

/// Gamma function for real x > 0 (Lanczos, g = 7, nine terms; reflection
/// below 1/2). Throws std::domain_error for x <= 0 or non-finite x.
double gamma(double x);

/// C_n = n * (Gamma(1/n) / n)^n, the right-hand side of the n-term relation.
struct ArctanConstant {
  int order;
  double value;
};

ArctanConstant arctan_constant(Order n);

/// n * integral_0^inf exp(-x^n) dx by 1-D quadrature on the mapped interval;
/// equals Gamma(1/n).
EvalResult gamma_via_exp_integral(Order n, const QuadratureConfig& cfg);

/// n * u_1 ... u_{n-1} * prod_{k=0}^{n-1} integral_0^inf exp(-(c_k x)^n) dx
/// with c_0 = 1, c_k = u_k. Every factor is integrated separately; the
/// product equals C_n for any positive arguments.
EvalResult exp_product_check(Order n, const ArgVector& args, const QuadratureConfig& cfg);

}  // namespace arctn
