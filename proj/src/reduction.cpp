#include "arctn/reduction.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "arctn/special_functions.hpp"

namespace arctn {

namespace {

double lower_gamma_series(double a, double x) {
  if (x == 0.0) return 0.0;
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::exp(a * std::log(x) - x) * sum;
}

std::vector<RegisteredIntegrand> build_registry() {
  std::vector<RegisteredIntegrand> r;

  r.push_back({"const_one", "1", 0, 10.0, true, [](std::span<const double>) { return 1.0; },
               [](double alpha, int n) -> std::optional<double> { return std::pow(alpha, n); }});

  r.push_back({"product_xy", "x1*x2*...*xn", 0, 10.0, true,
               [](std::span<const double> x) {
                 double p = 1.0;
                 for (double xi : x) p *= xi;
                 return p;
               },
               [](double alpha, int n) -> std::optional<double> { return std::pow(0.5 * alpha * alpha, n); }});

  r.push_back({"exp_neg_sum_squares", "exp(-(x1^2+...+xn^2))", 0, 10.0, true,
               [](std::span<const double> x) {
                 double s = 0.0;
                 for (double xi : x) s += xi * xi;
                 return std::exp(-s);
               },
               [](double alpha, int n) -> std::optional<double> {
                 return std::pow(0.5 * std::sqrt(std::numbers::pi) * std::erf(alpha), n);
               }});

  r.push_back({"exp_neg_sum_cubes", "exp(-(x1^3+...+xn^3))", 0, 10.0, true,
               [](std::span<const double> x) {
                 double s = 0.0;
                 for (double xi : x) s += xi * xi * xi;
                 return std::exp(-s);
               },
               [](double alpha, int n) -> std::optional<double> { return std::pow(exp_power_partial(alpha, 3), n); }});

  r.push_back({"rational_arctan3", "1/(1+x^3+y^3)", 2, 10.0, false,
               [](std::span<const double> x) { return 1.0 / (1.0 + x[0] * x[0] * x[0] + x[1] * x[1] * x[1]); },
               [](double alpha, int) -> std::optional<double> {
                 // Only the unit square has a known closed form.
                 if (alpha != 1.0) return std::nullopt;
                 return arctan_constant(Order(3)).value / 3.0;
               }});

  // Deliberately asymmetric so the two reduction terms differ.
  r.push_back({"polynomial_mixed", "1 + sum_i i*x_i^i - x1*x2*...*xn", 0, 10.0, false,
               [](std::span<const double> x) {
                 double s = 1.0;
                 double prod = 1.0;
                 for (std::size_t i = 0; i < x.size(); ++i) {
                   const auto k = static_cast<int>(i + 1);
                   s += k * std::pow(x[i], k);
                   prod *= x[i];
                 }
                 return s - prod;
               },
               [](double alpha, int n) -> std::optional<double> {
                 double v = std::pow(alpha, n);
                 for (int k = 1; k <= n; ++k) v += k * std::pow(alpha, k + 1) / (k + 1) * std::pow(alpha, n - 1);
                 return v - std::pow(0.5 * alpha * alpha, n);
               }});
  return r;
}

void check_alpha(const RegisteredIntegrand& entry, double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha >= entry.bound) {
    throw std::domain_error("alpha for " + entry.name + " must lie in [0, " + std::to_string(entry.bound) + ")");
  }
}

template <typename Fn>
EvalResult run_side(const char* side, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw SideFailure(side, e.what());
  }
}

ReductionReport finish(const RegisteredIntegrand& entry, double alpha, int n_vars, EvalResult lhs,
                       EvalResult rhs) {
  ReductionReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.residual = lhs.value - rhs.value;
  report.alpha = alpha;
  report.n_vars = n_vars;
  report.exact = entry.exact(alpha, n_vars);
  return report;
}

}  // namespace

const std::vector<RegisteredIntegrand>& integrand_registry() {
  static const std::vector<RegisteredIntegrand> registry = build_registry();
  return registry;
}

const RegisteredIntegrand& find_integrand(const std::string& name) {
  for (const auto& entry : integrand_registry()) {
    if (entry.name == name) return entry;
  }
  throw std::invalid_argument("unknown integrand '" + name + "'");
}

Integrand radial_reduction(const Integrand& f, int n_vars) {
  if (n_vars < 1 || n_vars > static_cast<int>(kMaxDimension)) {
    throw std::invalid_argument("radial_reduction: n_vars out of range");
  }
  const auto d = static_cast<std::size_t>(n_vars);
  // Point layout: (y_1, ..., y_{n-1}, beta).
  return [&f, d](std::span<const double> p) {
    const double beta = p[d - 1];
    std::array<double, kMaxDimension> z{};
    double sum = 0.0;
    for (std::size_t slot = 0; slot < d; ++slot) {
      std::size_t free = 0;
      for (std::size_t k = 0; k < d; ++k) z[k] = (k == slot) ? beta : beta * p[free++];
      sum += f(std::span<const double>(z.data(), d));
    }
    double scale = 1.0;
    for (std::size_t k = 1; k < d; ++k) scale *= beta;
    return sum == 0.0 ? 0.0 : scale * sum;
  };
}

double exp_power_partial(double x, int p) {
  if (x < 0.0 || p < 1) throw std::domain_error("exp_power_partial: need x >= 0 and p >= 1");
  const double a = 1.0 / p;
  return lower_gamma_series(a, std::pow(x, p)) / p;
}

ReductionReport reduce_check_f1(const std::string& integrand, double alpha, const QuadratureConfig& cfg) {
  const RegisteredIntegrand& entry = find_integrand(integrand);
  if (!entry.accepts_arity(2)) throw std::invalid_argument(entry.name + " does not take 2 variables");
  check_alpha(entry, alpha);
  if (alpha == 0.0) return finish(entry, alpha, 2, {}, {});

  const Integrand& f = entry.f;
  const EvalResult lhs = run_side("lhs", [&] { return integrate_box(f, Box({0.0, 0.0}, {alpha, alpha}), cfg); });
  auto reduced = [&f](std::span<const double> p) {
    const double x = p[0];
    const double beta = p[1];
    const std::array<double, 2> a{beta, beta * x};
    const std::array<double, 2> b{beta * x, beta};
    return beta * (f(a) + f(b));
  };
  const EvalResult rhs =
      run_side("rhs", [&] { return integrate_box(reduced, Box({0.0, 0.0}, {1.0, alpha}), cfg); });
  return finish(entry, alpha, 2, lhs, rhs);
}

ReductionReport reduce_check_f2(const std::string& integrand, int n_vars, double alpha,
                                const QuadratureConfig& cfg) {
  const RegisteredIntegrand& entry = find_integrand(integrand);
  if (n_vars < 2 || n_vars > 4) throw std::invalid_argument("n_vars must lie in 2..4");
  if (!entry.accepts_arity(n_vars)) {
    throw std::invalid_argument(entry.name + " does not take " + std::to_string(n_vars) + " variables");
  }
  check_alpha(entry, alpha);
  if (alpha == 0.0) return finish(entry, alpha, n_vars, {}, {});

  const auto d = static_cast<std::size_t>(n_vars);
  const Integrand& f = entry.f;
  const EvalResult lhs = run_side("lhs", [&] {
    return integrate_box(f, Box(std::vector<double>(d, 0.0), std::vector<double>(d, alpha)), cfg);
  });

  const Integrand reduced = radial_reduction(f, n_vars);
  std::vector<double> upper(d, 1.0);
  upper[d - 1] = alpha;
  const EvalResult rhs =
      run_side("rhs", [&] { return integrate_box(reduced, Box(std::vector<double>(d, 0.0), upper), cfg); });
  return finish(entry, alpha, n_vars, lhs, rhs);
}

}  // namespace arctn
