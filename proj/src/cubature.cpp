#include "arctn/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <array>
#include <memory>
#include <sstream>

namespace arctn {

namespace {

constexpr int kQmcReplicates = 16;
constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();

// Neumaier compensated sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double checked_call(const Integrand& f, std::span<const double> x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw NonFiniteIntegrand({x.begin(), x.end()}, y);
  return y;
}

struct Estimate {
  double high = 0.0;
  double low = 0.0;
};

// Local rules operate on a box given by its center and half-widths.
class LocalRule {
 public:
  virtual ~LocalRule() = default;
  virtual std::int64_t points() const = 0;
  virtual Estimate apply(const Integrand& f, std::span<const double> center,
                         std::span<const double> half) const = 0;
};

double tensor_gauss(const Integrand& f, const detail::GaussLegendreRule& rule,
                    std::span<const double> center, std::span<const double> half) {
  const std::size_t d = center.size();
  const std::size_t m = rule.nodes.size();
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  Accumulator acc;
  for (;;) {
    double w = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      x[a] = center[a] + half[a] * rule.nodes[idx[a]];
      w *= rule.weights[idx[a]];
    }
    acc.add(w * checked_call(f, x));
    std::size_t a = 0;
    while (a < d && ++idx[a] == m) idx[a++] = 0;
    if (a == d) break;
  }
  double jac = 1.0;
  for (double h : half) jac *= h;
  return acc.value() * jac;
}

class TensorGaussPair final : public LocalRule {
 public:
  TensorGaussPair(std::size_t dim, int high, int low)
      : high_(detail::gauss_legendre(high)), low_(detail::gauss_legendre(low)) {
    points_ = static_cast<std::int64_t>(std::pow(high, dim) + std::pow(low, dim));
  }
  std::int64_t points() const override { return points_; }
  Estimate apply(const Integrand& f, std::span<const double> center,
                 std::span<const double> half) const override {
    return {tensor_gauss(f, high_, center, half), tensor_gauss(f, low_, center, half)};
  }

 private:
  const detail::GaussLegendreRule& high_;
  const detail::GaussLegendreRule& low_;
  std::int64_t points_;
};

// Degree-7 rule with embedded degree-5 rule of Genz & Malik (1980).
class GenzMalik final : public LocalRule {
 public:
  explicit GenzMalik(std::size_t dim) : dim_(dim) {
    const double d = static_cast<double>(dim);
    w1_ = (12824.0 - 9120.0 * d + 400.0 * d * d) / 19683.0;
    w2_ = 980.0 / 6561.0;
    w3_ = (1820.0 - 400.0 * d) / 19683.0;
    w4_ = 200.0 / 19683.0;
    w5_ = 6859.0 / 19683.0 / std::ldexp(1.0, static_cast<int>(dim));
    e1_ = (729.0 - 950.0 * d + 50.0 * d * d) / 729.0;
    e2_ = 245.0 / 486.0;
    e3_ = (265.0 - 100.0 * d) / 1458.0;
    e4_ = 25.0 / 729.0;
  }
  std::int64_t points() const override {
    const auto d = static_cast<std::int64_t>(dim_);
    return 1 + 4 * d + 2 * d * (d - 1) + (std::int64_t{1} << d);
  }
  Estimate apply(const Integrand& f, std::span<const double> center,
                 std::span<const double> half) const override {
    static const double lambda2 = std::sqrt(9.0 / 70.0);
    static const double lambda4 = std::sqrt(9.0 / 10.0);
    static const double lambda5 = std::sqrt(9.0 / 19.0);
    const std::size_t d = dim_;
    std::vector<double> x(center.begin(), center.end());

    const double f0 = checked_call(f, x);
    Accumulator s2, s3, s4, s5;
    for (std::size_t a = 0; a < d; ++a) {
      for (double sign : {-1.0, 1.0}) {
        x[a] = center[a] + sign * lambda2 * half[a];
        s2.add(checked_call(f, x));
        x[a] = center[a] + sign * lambda4 * half[a];
        s3.add(checked_call(f, x));
      }
      x[a] = center[a];
    }
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) {
        for (double sa : {-1.0, 1.0}) {
          for (double sb : {-1.0, 1.0}) {
            x[a] = center[a] + sa * lambda4 * half[a];
            x[b] = center[b] + sb * lambda4 * half[b];
            s4.add(checked_call(f, x));
          }
        }
        x[a] = center[a];
        x[b] = center[b];
      }
    }
    const std::uint64_t corners = std::uint64_t{1} << d;
    for (std::uint64_t mask = 0; mask < corners; ++mask) {
      for (std::size_t a = 0; a < d; ++a) {
        const double sign = ((mask >> a) & 1u) ? 1.0 : -1.0;
        x[a] = center[a] + sign * lambda5 * half[a];
      }
      s5.add(checked_call(f, x));
    }

    double vol = 1.0;
    for (double h : half) vol *= 2.0 * h;
    const double high =
        vol * (w1_ * f0 + w2_ * s2.value() + w3_ * s3.value() + w4_ * s4.value() + w5_ * s5.value());
    const double low = vol * (e1_ * f0 + e2_ * s2.value() + e3_ * s3.value() + e4_ * s4.value());
    return {high, low};
  }

 private:
  std::size_t dim_;
  double w1_, w2_, w3_, w4_, w5_;
  double e1_, e2_, e3_, e4_;
};

std::unique_ptr<LocalRule> make_rule(std::size_t dim) {
  if (dim <= 2) return std::make_unique<TensorGaussPair>(dim, 15, 7);
  if (dim <= 4) return std::make_unique<TensorGaussPair>(dim, 9, 5);
  return std::make_unique<GenzMalik>(dim);
}

struct Region {
  std::vector<double> lower;
  std::vector<double> upper;
  double value = 0.0;
  double error = 0.0;
  std::uint64_t id = 0;
};

struct WorstFirst {
  bool operator()(const Region& a, const Region& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.id > b.id;
  }
};

void evaluate_region(const LocalRule& rule, const Integrand& f, Region& r) {
  const std::size_t d = r.lower.size();
  std::vector<double> center(d), half(d);
  for (std::size_t a = 0; a < d; ++a) {
    center[a] = 0.5 * (r.lower[a] + r.upper[a]);
    half[a] = 0.5 * (r.upper[a] - r.lower[a]);
  }
  const Estimate e = rule.apply(f, center, half);
  r.value = e.high;
  r.error = std::max(std::abs(e.high - e.low), kRoundoff * std::abs(e.high));
}

EvalResult integrate_adaptive(const Integrand& f, const Box& box, const QuadratureConfig& cfg) {
  const auto rule = make_rule(box.dim());
  const std::int64_t cost = rule->points();
  if (cost > cfg.max_evals) {
    throw std::invalid_argument("integrate_box: max_evals below the cost of one local rule");
  }

  std::vector<Region> heap;
  const WorstFirst order;
  std::uint64_t next_id = 0;
  Region root{{box.lower().begin(), box.lower().end()}, {box.upper().begin(), box.upper().end()}, 0, 0,
              next_id++};
  evaluate_region(*rule, f, root);
  std::int64_t evals = cost;
  double total_value = root.value;
  double total_error = root.error;
  heap.push_back(std::move(root));

  // Exact totals in id order; the running sums only decide when to look.
  auto exact_totals = [&heap]() {
    std::vector<const Region*> regions;
    regions.reserve(heap.size());
    for (const Region& r : heap) regions.push_back(&r);
    std::sort(regions.begin(), regions.end(), [](const Region* a, const Region* b) { return a->id < b->id; });
    Accumulator v, e;
    for (const Region* r : regions) {
      v.add(r->value);
      e.add(r->error);
    }
    return std::pair{v.value(), e.value()};
  };

  bool converged = false;
  for (;;) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_value));
    if (total_error <= tol) {
      std::tie(total_value, total_error) = exact_totals();
      if (total_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_value))) {
        converged = true;
        break;
      }
    }
    if (evals + 2 * cost > cfg.max_evals) break;

    std::pop_heap(heap.begin(), heap.end(), order);
    Region worst = std::move(heap.back());
    heap.pop_back();
    const std::size_t d = worst.lower.size();
    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t a = 0; a < d; ++a) {
      const double w = worst.upper[a] - worst.lower[a];
      if (w > widest) {
        widest = w;
        axis = a;
      }
    }
    const double mid = 0.5 * (worst.lower[axis] + worst.upper[axis]);
    Region left{worst.lower, worst.upper, 0, 0, next_id++};
    Region right{worst.lower, worst.upper, 0, 0, next_id++};
    left.upper[axis] = mid;
    right.lower[axis] = mid;
    evaluate_region(*rule, f, left);
    evaluate_region(*rule, f, right);
    evals += 2 * cost;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push_back(std::move(left));
    std::push_heap(heap.begin(), heap.end(), order);
    heap.push_back(std::move(right));
    std::push_heap(heap.begin(), heap.end(), order);
  }
  if (!converged) std::tie(total_value, total_error) = exact_totals();
  return {total_value, total_error, evals, converged};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

EvalResult integrate_qmc(const Integrand& f, const Box& box, const QuadratureConfig& cfg) {
  const std::size_t d = box.dim();
  const detail::SobolSequence base(d);
  std::vector<detail::SobolSequence> streams;
  streams.reserve(kQmcReplicates);
  for (int r = 0; r < kQmcReplicates; ++r) {
    streams.push_back(base.scrambled(splitmix64(cfg.seed * kQmcReplicates + static_cast<std::uint64_t>(r))));
  }

  std::int64_t per_stream = 1024;
  while (per_stream > 1 && kQmcReplicates * per_stream > cfg.max_evals) per_stream /= 2;

  const double vol = box.volume();
  std::vector<Accumulator> sums(kQmcReplicates);
  std::vector<double> u(d), x(d);
  std::int64_t done = 0;
  EvalResult result;
  for (;;) {
    for (int r = 0; r < kQmcReplicates; ++r) {
      for (std::int64_t i = done; i < per_stream; ++i) {
        streams[r].point(static_cast<std::uint64_t>(i), u);
        for (std::size_t a = 0; a < d; ++a) {
          x[a] = box.lower()[a] + u[a] * (box.upper()[a] - box.lower()[a]);
        }
        sums[r].add(checked_call(f, x));
      }
    }
    done = per_stream;

    Accumulator mean_acc;
    std::vector<double> estimates(kQmcReplicates);
    for (int r = 0; r < kQmcReplicates; ++r) {
      estimates[r] = vol * sums[r].value() / static_cast<double>(done);
      mean_acc.add(estimates[r]);
    }
    const double mean = mean_acc.value() / kQmcReplicates;
    double ss = 0.0;
    for (double e : estimates) ss += (e - mean) * (e - mean);
    const double std_error = std::sqrt(ss / (kQmcReplicates - 1) / kQmcReplicates);

    result.value = mean;
    result.error_estimate = std::max(3.0 * std_error, kRoundoff * std::abs(mean));
    result.evals = kQmcReplicates * done;
    result.converged = result.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(mean));
    if (result.converged || kQmcReplicates * 2 * per_stream > cfg.max_evals) break;
    per_stream *= 2;
  }
  return result;
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "adaptive") return Method::adaptive;
  if (name == "qmc") return Method::qmc;
  if (name == "auto") return Method::automatic;
  throw std::invalid_argument("unknown integration method '" + name + "' (expected adaptive, qmc or auto)");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::adaptive:
      return "adaptive";
    case Method::qmc:
      return "qmc";
    case Method::automatic:
      return "auto";
  }
  return "auto";
}

QuadratureConfig QuadratureConfig::defaults_for(std::size_t dim, Method method) {
  QuadratureConfig cfg;
  cfg.method = method;
  if (cfg.resolve(dim) == Method::qmc) {
    cfg.abs_tol = 1e-5;
    cfg.rel_tol = 1e-4;
  } else if (dim <= 2) {
    cfg.abs_tol = 1e-10;
    cfg.rel_tol = 1e-9;
  } else if (dim <= 4) {
    cfg.abs_tol = 1e-8;
    cfg.rel_tol = 1e-7;
  } else {
    cfg.abs_tol = 1e-6;
    cfg.rel_tol = 1e-5;
  }
  return cfg;
}

Method QuadratureConfig::resolve(std::size_t dim) const {
  if (method != Method::automatic) return method;
  return dim <= 4 ? Method::adaptive : Method::qmc;
}

void QuadratureConfig::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) throw std::invalid_argument("tolerances must be non-negative");
  if (abs_tol <= 0.0 && rel_tol <= 0.0) throw std::invalid_argument("at least one tolerance must be positive");
  if (max_evals < 1000) throw std::invalid_argument("max_evals must be at least 1000");
}

double EvalResult::tolerance(const QuadratureConfig& cfg) const {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw std::invalid_argument("Box: bounds must be non-empty and of equal length");
  }
  if (lower_.size() > kMaxDimension) throw std::invalid_argument("Box: dimension exceeds engine limit of 7");
  for (std::size_t a = 0; a < lower_.size(); ++a) {
    if (!std::isfinite(lower_[a]) || !std::isfinite(upper_[a]) || !(lower_[a] < upper_[a])) {
      throw std::invalid_argument("Box: require finite lower < upper on axis " + std::to_string(a));
    }
  }
}

Box Box::unit(std::size_t dim) { return Box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)); }

double Box::volume() const {
  double v = 1.0;
  for (std::size_t a = 0; a < dim(); ++a) v *= upper_[a] - lower_[a];
  return v;
}

namespace {
std::string describe_point(const std::vector<double>& point, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "integrand returned " << value << " at (";
  for (std::size_t i = 0; i < point.size(); ++i) os << (i ? ", " : "") << point[i];
  os << ")";
  return os.str();
}
}  // namespace

NonFiniteIntegrand::NonFiniteIntegrand(std::vector<double> point, double value)
    : std::runtime_error(describe_point(point, value)), point_(std::move(point)) {}

EvalResult integrate_box(const Integrand& f, const Box& box, const QuadratureConfig& cfg) {
  cfg.validate();
  if (cfg.resolve(box.dim()) == Method::qmc) return integrate_qmc(f, box, cfg);
  return integrate_adaptive(f, box, cfg);
}

EvalResult integrate_semi_infinite(const Integrand& f, const std::vector<bool>& unbounded,
                                   std::span<const double> lower, std::span<const double> upper,
                                   const QuadratureConfig& cfg) {
  const std::size_t d = lower.size();
  if (unbounded.size() != d || upper.size() != d) {
    throw std::invalid_argument("integrate_semi_infinite: axis arrays differ in length");
  }
  if (d == 0 || d > kMaxDimension) throw std::invalid_argument("integrate_semi_infinite: dimension out of range");
  std::vector<double> lo(d), hi(d);
  for (std::size_t a = 0; a < d; ++a) {
    lo[a] = unbounded[a] ? 0.0 : lower[a];
    hi[a] = unbounded[a] ? 1.0 - kSemiInfiniteEps : upper[a];
  }
  std::vector<double> origin(lower.begin(), lower.end());
  auto transformed = [&f, &unbounded, &origin](std::span<const double> t) {
    std::array<double, kMaxDimension> x{};
    double jac = 1.0;
    for (std::size_t a = 0; a < t.size(); ++a) {
      if (unbounded[a]) {
        const double s = 1.0 - t[a];
        x[a] = origin[a] + t[a] / s;
        jac /= s * s;
      } else {
        x[a] = t[a];
      }
    }
    const double y = f(std::span<const double>(x.data(), t.size()));
    return y == 0.0 ? 0.0 : y * jac;
  };
  return integrate_box(transformed, Box(std::move(lo), std::move(hi)), cfg);
}

EvalResult integrate_orthant(const Integrand& f, std::size_t dim, const QuadratureConfig& cfg) {
  const std::vector<double> zeros(dim, 0.0);
  return integrate_semi_infinite(f, std::vector<bool>(dim, true), zeros, zeros, cfg);
}

}  // namespace arctn
