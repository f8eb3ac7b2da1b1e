#include "arctn/arctann.hpp"

#include <algorithm>
#include <cmath>

#include "arctn/reduction.hpp"

namespace arctn {

QuadratureConfig default_config(Order n) { return QuadratureConfig::defaults_for(n.dim()); }

double arctan_integrand(int n, std::span<const double> x) {
  double denom = 1.0;
  for (double xi : x) {
    double p = xi;
    for (int k = 1; k < n; ++k) p *= xi;
    denom += p;
  }
  return 1.0 / denom;
}

EvalResult eval_arctan(Order n, const ArgVector& args, const QuadratureConfig& cfg) {
  args.check(n, true);
  if (std::any_of(args.begin(), args.end(), [](double u) { return u == 0.0; })) return {0.0, 0.0, 0, true};

  const int order = n.value();
  auto f = [order](std::span<const double> x) { return arctan_integrand(order, x); };
  const Box box(std::vector<double>(n.dim(), 0.0), {args.begin(), args.end()});
  EvalResult r = integrate_box(f, box, cfg);
  if (!r.converged && cfg.resolve(n.dim()) == Method::adaptive) {
    EvalResult retry = integrate_box(f, box, cfg.with_budget(4 * cfg.max_evals));
    retry.evals += r.evals;
    r = retry;
  }
  return r;
}

ArgVector reflection_args(Order n, const ArgVector& args, std::size_t p) {
  args.check(n, false);
  if (p < 1 || p > n.dim()) {
    throw std::domain_error("reflection index must lie in 1.." + std::to_string(n.dim()) + ", got " +
                            std::to_string(p));
  }
  const double pivot = args[p - 1];
  ArgVector out = args;
  for (std::size_t k = 0; k < args.size(); ++k) out[k] = (k == p - 1) ? 1.0 / pivot : args[k] / pivot;
  return out;
}

std::vector<EvalResult> functional_terms(Order n, const ArgVector& args, const QuadratureConfig& cfg) {
  args.check(n, false);
  std::vector<EvalResult> terms;
  terms.reserve(static_cast<std::size_t>(n.value()));
  for (std::size_t p = 0; p <= n.dim(); ++p) {
    try {
      terms.push_back(eval_arctan(n, p == 0 ? args : reflection_args(n, args, p), cfg));
    } catch (const std::exception& e) {
      throw TermFailure(p, e.what());
    }
  }
  return terms;
}

EvalResult functional_sum(Order n, const ArgVector& args, const QuadratureConfig& cfg) {
  EvalResult sum{0.0, 0.0, 0, true};
  for (const EvalResult& t : functional_terms(n, args, cfg)) {
    sum.value += t.value;
    sum.error_estimate += t.error_estimate;
    sum.evals += t.evals;
    sum.converged = sum.converged && t.converged;
  }
  return sum;
}

double functional_residual(Order n, const ArgVector& args, const QuadratureConfig& cfg) {
  return functional_sum(n, args, cfg).value - arctan_constant(n).value;
}

EvalResult unit_cube_value(Order n, const QuadratureConfig& cfg) {
  return eval_arctan(n, ArgVector::filled(n.dim(), 1.0), cfg);
}

EvalResult full_space_value(Order n, const QuadratureConfig& cfg) {
  const int order = n.value();
  const Integrand f = [order](std::span<const double> x) { return arctan_integrand(order, x); };
  const std::size_t d = n.dim();
  if (d == 1) return integrate_orthant(f, 1, cfg);

  const Integrand reduced = radial_reduction(f, static_cast<int>(d));
  std::vector<bool> unbounded(d, false);
  unbounded[d - 1] = true;
  const std::vector<double> lower(d, 0.0);
  const std::vector<double> upper(d, 1.0);
  return integrate_semi_infinite(reduced, unbounded, lower, upper, cfg);
}

EvalResult full_space_value_direct(Order n, const QuadratureConfig& cfg) {
  const int order = n.value();
  return integrate_orthant([order](std::span<const double> x) { return arctan_integrand(order, x); }, n.dim(),
                           cfg);
}

namespace {

EvalResult combine(const EvalResult& a, double wa, const EvalResult& b, double wb) {
  return {wa * a.value + wb * b.value, std::abs(wa) * a.error_estimate + std::abs(wb) * b.error_estimate,
          a.evals + b.evals, a.converged && b.converged};
}

}  // namespace

EvalResult eval_F(Order n, double u, const QuadratureConfig& cfg) {
  if (!std::isfinite(u) || u <= 0.0) throw std::domain_error("F: u must be finite and positive");
  const EvalResult diagonal = eval_arctan(n, ArgVector::filled(n.dim(), u), cfg);
  ArgVector mixed = ArgVector::filled(n.dim(), 1.0);
  mixed[0] = u;
  const EvalResult edge = eval_arctan(n, mixed, cfg);
  return combine(diagonal, 1.0, edge, static_cast<double>(n.value() - 1));
}

EvalResult eval_phi4(double u, double v, const QuadratureConfig& cfg) {
  if (!std::isfinite(u) || !std::isfinite(v) || u <= 0.0 || v <= 0.0) {
    throw std::domain_error("Phi: u and v must be finite and positive");
  }
  const Order four(4);
  const auto triples = order4_printed_triples(u, v);
  return combine(eval_arctan(four, triples[0], cfg), 1.0, eval_arctan(four, triples[2], cfg), 1.0);
}

std::array<ArgVector, 4> order4_printed_triples(double u, double v) {
  return {ArgVector{u, v, u / v}, ArgVector{1.0 / u, v / u, 1.0 / v}, ArgVector{u / v, 1.0 / v, u / (v * v)},
          ArgVector{v, v * v / u, v / u}};
}

bool same_multiset(const ArgVector& a, const ArgVector& b, double rel_tol) {
  if (a.size() != b.size()) return false;
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - y[i]) > rel_tol * std::max(std::abs(x[i]), std::abs(y[i]))) return false;
  }
  return true;
}

}  // namespace arctn
