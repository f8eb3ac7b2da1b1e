#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace arctn {

/// Integer order n >= 2 of the generalized arctangent; the defining integral
/// is (n - 1)-dimensional.
class Order {
 public:
  explicit Order(int n) : n_(n) {
    if (n < 2) throw std::domain_error("order must be an integer >= 2, got " + std::to_string(n));
  }
  int value() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(n_ - 1); }

  friend bool operator==(Order, Order) = default;

 private:
  int n_;
};

/// Upper limits (u_1, ..., u_{n-1}).
class ArgVector {
 public:
  ArgVector() = default;
  ArgVector(std::initializer_list<double> u) : u_(u) {}
  explicit ArgVector(std::vector<double> u) : u_(std::move(u)) {}

  static ArgVector filled(std::size_t size, double value) { return ArgVector(std::vector<double>(size, value)); }

  std::size_t size() const { return u_.size(); }
  double operator[](std::size_t i) const { return u_[i]; }
  double& operator[](std::size_t i) { return u_[i]; }
  std::span<const double> values() const { return u_; }
  auto begin() const { return u_.begin(); }
  auto end() const { return u_.end(); }

  /// Throws std::domain_error unless the vector has n - 1 finite entries that
  /// are positive (or non-negative when allow_zero).
  void check(Order n, bool allow_zero) const;

  friend bool operator==(const ArgVector&, const ArgVector&) = default;

 private:
  std::vector<double> u_;
};

}  // namespace arctn
