#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace arctn::testing {

/// Uniform in [0, 1) from the raw 64-bit stream, independent of the
/// standard library's distribution implementations.
inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace arctn::testing
