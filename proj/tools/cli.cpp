#include "cli.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>

#include "arctn/arctann.hpp"
#include "arctn/reduction.hpp"
#include "arctn/special_functions.hpp"
#include "output.hpp"

namespace arctn::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& message) : std::runtime_error(flag + ": " + message) {}
};

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Options {
  std::string format = "text";
  double abs_tol = kUnset;
  double rel_tol = kUnset;
  std::int64_t max_evals = -1;
  std::string method = "auto";
  std::uint64_t seed = 0;

  int order = 0;
  std::string args;
  int random = 0;
  double u = kUnset;
  double v = kUnset;
  std::string formula;
  std::string integrand;
  int n_vars = 0;
  double alpha = kUnset;
};

struct CommandOutput {
  std::vector<OutputRecord> records;
  bool numeric_failure = false;
};

double parse_double(const std::string& text, const std::string& flag) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(text.c_str(), &end);
  if (text.empty() || errno != 0 || end != text.c_str() + text.size() || !std::isfinite(x)) {
    throw UsageError(flag, "'" + text + "' is not a finite number");
  }
  return x;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma - start), flag));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Order checked_order(int n) {
  if (n < 2) throw UsageError("--order", "must be an integer >= 2");
  if (static_cast<std::size_t>(n - 1) > kMaxDimension) {
    throw UsageError("--order", "must be at most " + std::to_string(kMaxDimension + 1));
  }
  return Order(n);
}

double checked_positive(double x, const std::string& flag) {
  if (std::isnan(x)) throw UsageError(flag, "is required");
  if (!(x > 0.0)) throw UsageError(flag, "must be positive");
  return x;
}

std::int64_t env_budget() {
  const char* raw = std::getenv("ARCTN_MAX_EVALS");
  if (raw == nullptr || *raw == '\0') return -1;
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(raw, &end, 10);
  if (errno != 0 || *end != '\0' || v < 1000) {
    throw UsageError("ARCTN_MAX_EVALS", "must be an integer >= 1000, got '" + std::string(raw) + "'");
  }
  return v;
}

QuadratureConfig make_config(const Options& o, std::size_t dim) {
  Method method;
  try {
    method = parse_method(o.method);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--method", e.what());
  }
  QuadratureConfig cfg = QuadratureConfig::defaults_for(dim, method);
  if (!std::isnan(o.abs_tol)) cfg.abs_tol = o.abs_tol;
  if (!std::isnan(o.rel_tol)) cfg.rel_tol = o.rel_tol;
  const std::int64_t env = env_budget();
  if (o.max_evals >= 0) {
    cfg.max_evals = o.max_evals;
  } else if (env > 0) {
    cfg.max_evals = env;
  }
  cfg.seed = o.seed;
  if (cfg.abs_tol < 0.0 || cfg.rel_tol < 0.0 || (cfg.abs_tol == 0.0 && cfg.rel_tol == 0.0)) {
    throw UsageError("--abs-tol/--rel-tol", "need non-negative tolerances, at least one positive");
  }
  if (cfg.max_evals < 1000) throw UsageError("--max-evals", "must be at least 1000");
  return cfg;
}

OutputRecord make_record(std::string command, std::vector<std::pair<std::string, InputValue>> inputs,
                         const EvalResult& r) {
  OutputRecord rec;
  rec.command = std::move(command);
  rec.inputs = std::move(inputs);
  rec.value = r.value;
  rec.error_estimate = r.error_estimate;
  rec.converged = r.converged;
  rec.evals = r.evals;
  return rec;
}

// Within the requested tolerance of the reference, or within ten error
// estimates of it.
void judge(OutputRecord& rec, const QuadratureConfig& cfg) {
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(*rec.reference));
  rec.pass = rec.converged && std::abs(*rec.residual) <= std::max(10.0 * rec.error_estimate, tol);
}

EvalResult add(const EvalResult& a, const EvalResult& b) {
  return {a.value + b.value, a.error_estimate + b.error_estimate, a.evals + b.evals, a.converged && b.converged};
}

CommandOutput cmd_eval(const Options& o) {
  const Order n = checked_order(o.order);
  if (o.args.empty()) throw UsageError("--args", "is required");
  const ArgVector args(parse_list(o.args, "--args"));
  if (args.size() != n.dim()) {
    throw UsageError("--args", "order " + std::to_string(n.value()) + " takes " + std::to_string(n.dim()) +
                                   " values, got " + std::to_string(args.size()));
  }
  for (double u : args) {
    if (u < 0.0) throw UsageError("--args", "values must be non-negative");
  }
  const QuadratureConfig cfg = make_config(o, n.dim());
  const EvalResult r = eval_arctan(n, args, cfg);
  OutputRecord rec = make_record("eval", {{"order", std::int64_t{n.value()}}, {"args", std::vector<double>(args.begin(), args.end())}}, r);
  const bool degenerate = std::any_of(args.begin(), args.end(), [](double u) { return u == 0.0; });
  const bool unit = std::all_of(args.begin(), args.end(), [](double u) { return u == 1.0; });
  if (degenerate) {
    rec.set_reference(0.0);
  } else if (n.value() == 2) {
    rec.set_reference(std::atan(args[0]));
  } else if (unit) {
    rec.set_reference(arctan_constant(n).value / n.value());
  }
  return {{rec}, !r.converged};
}

ArgVector random_args(std::mt19937_64& rng, std::size_t size) {
  std::vector<double> u(size);
  for (double& x : u) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = std::pow(10.0, 2.0 * unit - 1.0);
  }
  return ArgVector(std::move(u));
}

CommandOutput cmd_identity(const Options& o) {
  const Order n = checked_order(o.order);
  if (!o.args.empty() && o.random > 0) throw UsageError("--args", "cannot be combined with --random");
  std::vector<ArgVector> samples;
  if (!o.args.empty()) {
    ArgVector a(parse_list(o.args, "--args"));
    if (a.size() != n.dim()) {
      throw UsageError("--args", "order " + std::to_string(n.value()) + " takes " + std::to_string(n.dim()) +
                                     " values, got " + std::to_string(a.size()));
    }
    for (double u : a) {
      if (!(u > 0.0)) throw UsageError("--args", "values must be positive");
    }
    samples.push_back(std::move(a));
  } else if (o.random > 0) {
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < o.random; ++i) samples.push_back(random_args(rng, n.dim()));
  } else {
    throw UsageError("--args", "give --args or --random");
  }

  const QuadratureConfig cfg = make_config(o, n.dim());
  const double constant = arctan_constant(n).value;
  CommandOutput out;
  for (const ArgVector& a : samples) {
    OutputRecord rec = make_record("identity", {{"order", std::int64_t{n.value()}}, {"args", std::vector<double>(a.begin(), a.end())}},
                                   functional_sum(n, a, cfg));
    rec.set_reference(constant);
    judge(rec, cfg);
    out.numeric_failure = out.numeric_failure || !*rec.pass;
    out.records.push_back(std::move(rec));
  }
  return out;
}

CommandOutput cmd_constant(const Options& o) {
  const Order n = checked_order(o.order);
  OutputRecord rec;
  rec.command = "constant";
  rec.inputs = {{"order", std::int64_t{n.value()}}};
  rec.value = arctan_constant(n).value;
  return {{rec}, false};
}

CommandOutput single_checked(OutputRecord rec, double reference, const QuadratureConfig& cfg) {
  rec.set_reference(reference);
  judge(rec, cfg);
  const bool failed = !*rec.pass;
  return {{std::move(rec)}, failed};
}

CommandOutput cmd_unitcube(const Options& o) {
  const Order n = checked_order(o.order);
  const QuadratureConfig cfg = make_config(o, n.dim());
  return single_checked(make_record("unitcube", {{"order", std::int64_t{n.value()}}}, unit_cube_value(n, cfg)),
                        arctan_constant(n).value / n.value(), cfg);
}

CommandOutput cmd_fullspace(const Options& o) {
  const Order n = checked_order(o.order);
  const QuadratureConfig cfg = make_config(o, n.dim());
  return single_checked(make_record("fullspace", {{"order", std::int64_t{n.value()}}}, full_space_value(n, cfg)),
                        arctan_constant(n).value, cfg);
}

CommandOutput cmd_gammacheck(const Options& o) {
  std::vector<int> orders;
  if (o.order != 0) {
    orders.push_back(checked_order(o.order).value());
  } else {
    for (int n = 2; n <= 8; ++n) orders.push_back(n);
  }
  const QuadratureConfig cfg = make_config(o, 1);
  CommandOutput out;
  for (int k : orders) {
    const Order n(k);
    auto single = single_checked(make_record("gammacheck", {{"order", std::int64_t{k}}}, gamma_via_exp_integral(n, cfg)),
                                 arctn::gamma(1.0 / k), cfg);
    out.numeric_failure = out.numeric_failure || single.numeric_failure;
    out.records.push_back(std::move(single.records.front()));
  }
  return out;
}

CommandOutput cmd_fsym(const Options& o) {
  const Order n = checked_order(o.order);
  const double u = checked_positive(o.u, "--u");
  const QuadratureConfig cfg = make_config(o, n.dim());
  const EvalResult r = add(eval_F(n, u, cfg), eval_F(n, 1.0 / u, cfg));
  return single_checked(make_record("fsym", {{"order", std::int64_t{n.value()}}, {"u", u}}, r),
                        2.0 * arctan_constant(n).value, cfg);
}

CommandOutput cmd_phi4(const Options& o) {
  const double u = checked_positive(o.u, "--u");
  const double v = checked_positive(o.v, "--v");
  const QuadratureConfig cfg = make_config(o, 3);
  const EvalResult r = add(eval_phi4(u, v, cfg), eval_phi4(1.0 / u, 1.0 / v, cfg));
  return single_checked(make_record("phi4", {{"u", u}, {"v", v}}, r), arctan_constant(Order(4)).value, cfg);
}

CommandOutput cmd_reduce(const Options& o) {
  if (o.formula != "f1" && o.formula != "f2") throw UsageError("--formula", "must be f1 or f2");
  try {
    find_integrand(o.integrand);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--integrand", e.what());
  }
  if (std::isnan(o.alpha)) throw UsageError("--alpha", "is required");
  const int n_vars = o.n_vars == 0 ? 2 : o.n_vars;
  if (o.formula == "f1" && n_vars != 2) throw UsageError("--n-vars", "f1 is the two-variable formula");
  if (n_vars < 2 || n_vars > 4) throw UsageError("--n-vars", "must lie in 2..4");
  if (!find_integrand(o.integrand).accepts_arity(n_vars)) {
    throw UsageError("--n-vars", o.integrand + " does not take " + std::to_string(n_vars) + " variables");
  }
  const RegisteredIntegrand& entry = find_integrand(o.integrand);
  if (o.alpha < 0.0 || o.alpha >= entry.bound) {
    throw UsageError("--alpha", "must lie in [0, " + format_text_number(entry.bound) + ") for " + entry.name);
  }
  const QuadratureConfig cfg = make_config(o, static_cast<std::size_t>(n_vars));
  const ReductionReport report = o.formula == "f1" ? reduce_check_f1(o.integrand, o.alpha, cfg)
                                                   : reduce_check_f2(o.integrand, n_vars, o.alpha, cfg);
  OutputRecord rec;
  rec.command = "reduce";
  rec.inputs = {{"formula", o.formula}, {"integrand", o.integrand}, {"n_vars", std::int64_t{n_vars}}, {"alpha", o.alpha}};
  rec.value = report.lhs.value;
  rec.error_estimate = report.lhs.error_estimate + report.rhs.error_estimate;
  rec.reference = report.rhs.value;
  rec.residual = report.residual;
  rec.converged = report.lhs.converged && report.rhs.converged;
  rec.evals = report.lhs.evals + report.rhs.evals;
  rec.pass = rec.converged && report.pass();
  return {{rec}, !*rec.pass};
}

void print_integrands(std::ostream& out, Format format) {
  const auto& registry = integrand_registry();
  switch (format) {
    case Format::json:
      for (const auto& e : registry) {
        out << "{\"name\":\"" << e.name << "\",\"formula\":\"" << e.formula << "\",\"arity\":" << e.arity
            << ",\"bound\":" << format_json_number(e.bound) << ",\"separable\":" << (e.separable ? "true" : "false")
            << "}\n";
      }
      return;
    case Format::csv:
      out << "name,formula,arity,bound,separable\n";
      for (const auto& e : registry) {
        out << e.name << ",\"" << e.formula << "\"," << e.arity << ',' << format_json_number(e.bound) << ','
            << (e.separable ? "true" : "false") << '\n';
      }
      return;
    case Format::text: {
      std::size_t name_w = 4, formula_w = 7;
      for (const auto& e : registry) {
        name_w = std::max(name_w, e.name.size());
        formula_w = std::max(formula_w, e.formula.size());
      }
      auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
      out << pad("name", name_w) << "  " << pad("formula", formula_w) << "  arity  bound  separable\n";
      for (const auto& e : registry) {
        const std::string arity = e.arity == 0 ? "any" : std::to_string(e.arity);
        out << pad(e.name, name_w) << "  " << pad(e.formula, formula_w) << "  " << pad(arity, 5) << "  "
            << pad(format_text_number(e.bound), 5) << "  " << (e.separable ? "yes" : "no") << '\n';
      }
      return;
    }
  }
}

void print_identity_summary(std::ostream& out, std::ostream& err, Format format,
                            const std::vector<OutputRecord>& records) {
  double worst = 0.0;
  bool all_pass = true;
  for (const auto& r : records) {
    worst = std::max(worst, std::abs(*r.residual));
    all_pass = all_pass && *r.pass;
  }
  switch (format) {
    case Format::json:
      out << "{\"summary\":\"identity\",\"samples\":" << records.size()
          << ",\"max_abs_residual\":" << format_json_number(worst) << ",\"all_pass\":" << (all_pass ? "true" : "false")
          << "}\n";
      return;
    case Format::csv:
      err << "samples=" << records.size() << " max_abs_residual=" << format_json_number(worst)
          << " all_pass=" << (all_pass ? "true" : "false") << '\n';
      return;
    case Format::text:
      out << "samples: " << records.size() << "  max |residual|: " << format_text_number(worst)
          << "  all pass: " << (all_pass ? "yes" : "no") << '\n';
      return;
  }
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format: text, json or csv")->capture_default_str();
}

void add_numeric(CLI::App* cmd, Options& o) {
  add_format(cmd, o);
  cmd->add_option("--abs-tol", o.abs_tol, "Absolute tolerance (default depends on dimension)");
  cmd->add_option("--rel-tol", o.rel_tol, "Relative tolerance (default depends on dimension)");
  cmd->add_option("--max-evals", o.max_evals, "Integrand evaluation budget (env ARCTN_MAX_EVALS)");
  cmd->add_option("--method", o.method, "Integration method: adaptive, qmc or auto")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Seed for qmc scrambling and random samples")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Generalized n-th order arctangent: evaluation and identity checks", "arctn"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Evaluate arctan_n(u_1, ..., u_{n-1})");
  eval->add_option("--order", o.order, "Order n >= 2")->required();
  eval->add_option("--args", o.args, "Comma-separated upper limits u_1,...,u_{n-1}")->required();
  add_numeric(eval, o);

  auto* identity = app.add_subcommand("identity", "Check the n-term functional relation");
  identity->add_option("--order", o.order, "Order n >= 2")->required();
  identity->add_option("--args", o.args, "Comma-separated positive arguments");
  identity->add_option("--random", o.random, "Number of random samples, log-uniform in [0.1, 10]");
  add_numeric(identity, o);

  auto* constant = app.add_subcommand("constant", "Print C_n = n (Gamma(1/n)/n)^n");
  constant->add_option("--order", o.order, "Order n >= 2")->required();
  add_format(constant, o);

  auto* unitcube = app.add_subcommand("unitcube", "arctan_n(1, ..., 1) against (Gamma(1/n)/n)^n");
  unitcube->add_option("--order", o.order, "Order n >= 2")->required();
  add_numeric(unitcube, o);

  auto* fullspace = app.add_subcommand("fullspace", "Integral over the positive orthant against C_n");
  fullspace->add_option("--order", o.order, "Order n >= 2")->required();
  add_numeric(fullspace, o);

  auto* gammacheck = app.add_subcommand("gammacheck", "n * int_0^inf exp(-x^n) dx against Gamma(1/n)");
  gammacheck->add_option("--order", o.order, "Order n >= 2 (default: 2..8)");
  add_numeric(gammacheck, o);

  auto* fsym = app.add_subcommand("fsym", "F(u) + F(1/u) against 2 C_n");
  fsym->add_option("--order", o.order, "Order n >= 2")->required();
  fsym->add_option("--u", o.u, "Positive u")->required();
  add_numeric(fsym, o);

  auto* phi4 = app.add_subcommand("phi4", "Phi(u, v) + Phi(1/u, 1/v) against C_4");
  phi4->add_option("--u", o.u, "Positive u")->required();
  phi4->add_option("--v", o.v, "Positive v")->required();
  add_numeric(phi4, o);

  auto* reduce = app.add_subcommand("reduce", "Check a hypercube reduction formula on a registered integrand");
  reduce->add_option("--formula", o.formula, "f1 or f2")->required();
  reduce->add_option("--integrand", o.integrand, "Registered integrand name (see 'integrands')")->required();
  reduce->add_option("--n-vars", o.n_vars, "Number of variables for f2 (2..4, default 2)");
  reduce->add_option("--alpha", o.alpha, "Hypercube side alpha >= 0")->required();
  add_numeric(reduce, o);

  auto* integrands = app.add_subcommand("integrands", "List the registered reduction integrands");
  add_format(integrands, o);

  std::vector<const char*> argv{"arctn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    Format format;
    try {
      format = parse_format(o.format);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--format", e.what());
    }
    if (integrands->parsed()) {
      print_integrands(out, format);
      return kExitOk;
    }

    CommandOutput result;
    if (eval->parsed()) result = cmd_eval(o);
    else if (identity->parsed()) result = cmd_identity(o);
    else if (constant->parsed()) result = cmd_constant(o);
    else if (unitcube->parsed()) result = cmd_unitcube(o);
    else if (fullspace->parsed()) result = cmd_fullspace(o);
    else if (gammacheck->parsed()) result = cmd_gammacheck(o);
    else if (fsym->parsed()) result = cmd_fsym(o);
    else if (phi4->parsed()) result = cmd_phi4(o);
    else result = cmd_reduce(o);

    write_records(out, format, result.records);
    if (identity->parsed()) print_identity_summary(out, err, format, result.records);
    return result.numeric_failure ? kExitNumeric : kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace arctn::cli
