#include "arctn/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace arctn {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
  // Valid for x >= 1/2.
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + static_cast<double>(k));
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) e^-t split in half to delay overflow.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * series;
}

}  // namespace

double gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) throw std::domain_error("gamma: argument must be finite and positive");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  return lanczos_gamma(x);
}

ArctanConstant arctan_constant(Order n) {
  const double k = n.value();
  return {n.value(), k * std::exp(k * std::log(gamma(1.0 / k) / k))};
}

namespace {

// integral_0^inf exp(-(c x)^n) dx over the mapped unit interval.
EvalResult exp_power_integral(int n, double c, const QuadratureConfig& cfg) {
  auto f = [n, c](std::span<const double> x) {
    const double y = c * x[0];
    double p = y;
    for (int k = 1; k < n; ++k) p *= y;
    return std::exp(-p);
  };
  return integrate_orthant(f, 1, cfg);
}

}  // namespace

EvalResult gamma_via_exp_integral(Order n, const QuadratureConfig& cfg) {
  EvalResult r = exp_power_integral(n.value(), 1.0, cfg);
  r.value *= n.value();
  r.error_estimate *= n.value();
  return r;
}

EvalResult exp_product_check(Order n, const ArgVector& args, const QuadratureConfig& cfg) {
  args.check(n, false);
  EvalResult out;
  out.value = n.value();
  double rel_error = 0.0;
  for (int k = 0; k < n.value(); ++k) {
    const double c = k == 0 ? 1.0 : args[static_cast<std::size_t>(k - 1)];
    const EvalResult factor = exp_power_integral(n.value(), c, cfg);
    out.value *= c * factor.value;
    rel_error += factor.error_estimate / std::abs(factor.value);
    out.evals += factor.evals;
    out.converged = out.converged && factor.converged;
  }
  out.error_estimate = std::abs(out.value) * rel_error;
  return out;
}

}  // namespace arctn
