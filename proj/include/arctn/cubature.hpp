#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace arctn {

/// Highest dimension accepted by the integration engine.
inline constexpr std::size_t kMaxDimension = 7;

/// Upper truncation point 1 - eps of the semi-infinite map x = t / (1 - t).
inline constexpr double kSemiInfiniteEps = 1e-12;

enum class Method { adaptive, qmc, automatic };

/// Parses "adaptive", "qmc" or "auto"; throws std::invalid_argument otherwise.
Method parse_method(const std::string& name);
std::string to_string(Method method);

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  std::int64_t max_evals = 10'000'000;
  Method method = Method::automatic;
  std::uint64_t seed = 0;

  /// Default tolerances for a d-dimensional integral: 1e-10/1e-9 for d <= 2,
  /// 1e-8/1e-7 for d = 3, 4 and 1e-5/1e-4 when the resolved method is qmc.
  static QuadratureConfig defaults_for(std::size_t dim, Method method = Method::automatic);

  /// Method actually used for a d-dimensional integral (automatic -> adaptive
  /// for d <= 4, qmc above).
  Method resolve(std::size_t dim) const;

  /// Throws std::invalid_argument unless a tolerance is positive and
  /// max_evals >= 1000.
  void validate() const;

  QuadratureConfig with_budget(std::int64_t evals) const {
    QuadratureConfig c = *this;
    c.max_evals = evals;
    return c;
  }
};

struct EvalResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evals = 0;
  bool converged = true;

  /// The tolerance this result had to meet under cfg.
  double tolerance(const QuadratureConfig& cfg) const;
};

/// Axis-aligned box; lower[i] < upper[i] on every axis.
class Box {
 public:
  Box(std::vector<double> lower, std::vector<double> upper);

  static Box unit(std::size_t dim);

  std::size_t dim() const { return lower_.size(); }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  double volume() const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

using Integrand = std::function<double(std::span<const double>)>;

/// Raised when the integrand returns NaN or infinity; what() names the point.
class NonFiniteIntegrand : public std::runtime_error {
 public:
  NonFiniteIntegrand(std::vector<double> point, double value);
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

/// Integrates f over the box.
///
/// The adaptive method keeps a max-heap of sub-boxes keyed on the local error
/// estimate |high - low| and bisects the worst box along its widest axis
/// (lowest axis index on ties). Local rules are tensor Gauss-Legendre 15/7
/// points per axis for d <= 2, tensor 9/5 for d = 3, 4 and a degree 7/5
/// Genz-Malik pair for d >= 5. The qmc method averages 16 digitally shifted
/// Sobol' sequences and reports three standard errors.
///
/// When the budget runs out the best estimate is returned with
/// converged = false.
EvalResult integrate_box(const Integrand& f, const Box& box, const QuadratureConfig& cfg);

/// Integrates f over a box whose listed axes extend to +infinity.
///
/// unbounded[i] marks axis i as [lower[i], inf); for bounded axes the range is
/// [lower[i], upper[i]]. Unbounded axes are mapped through x = lower + t/(1-t)
/// on t in [0, 1 - kSemiInfiniteEps].
EvalResult integrate_semi_infinite(const Integrand& f, const std::vector<bool>& unbounded,
                                   std::span<const double> lower, std::span<const double> upper,
                                   const QuadratureConfig& cfg);

/// Convenience overload: every axis is [0, inf).
EvalResult integrate_orthant(const Integrand& f, std::size_t dim, const QuadratureConfig& cfg);

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int points);

/// Sobol' points in [0,1)^dim, dim <= kMaxDimension, held as 52-bit
/// integer coordinates. A default-constructed sequence is unscrambled;
/// scrambled() applies a random linear matrix scramble and a digital shift.
class SobolSequence {
 public:
  static constexpr int kBits = 52;

  explicit SobolSequence(std::size_t dim);

  std::size_t dim() const { return dim_; }

  SobolSequence scrambled(std::uint64_t stream_seed) const;

  /// Coordinates of point `index` (direct, not Gray-code, ordering).
  void point(std::uint64_t index, std::span<double> out) const;

 private:
  std::size_t dim_;
  std::vector<std::vector<std::uint64_t>> directions_;  // [dim][kBits]
  std::vector<std::uint64_t> shift_;
};

}  // namespace detail

}  // namespace arctn
