#include "arctn/types.hpp"

#include <cmath>

namespace arctn {

void ArgVector::check(Order n, bool allow_zero) const {
  if (u_.size() != n.dim()) {
    throw std::domain_error("order " + std::to_string(n.value()) + " takes " + std::to_string(n.dim()) +
                            " arguments, got " + std::to_string(u_.size()));
  }
  for (std::size_t i = 0; i < u_.size(); ++i) {
    const double u = u_[i];
    const bool ok = std::isfinite(u) && (allow_zero ? u >= 0.0 : u > 0.0);
    if (!ok) {
      throw std::domain_error("argument " + std::to_string(i + 1) + " must be finite and " +
                              (allow_zero ? "non-negative" : "positive") + ", got " + std::to_string(u));
    }
  }
}

}  // namespace arctn
