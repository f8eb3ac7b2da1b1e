#include <array>
#include <bit>
#include <random>
#include <stdexcept>

#include "arctn/cubature.hpp"

namespace arctn::detail {

namespace {

struct Primitive {
  int degree;
  unsigned coeffs;
  std::array<std::uint64_t, 4> m;
};

// Joe & Kuo (new-joe-kuo-6.21201) parameters for dimensions 2..7.
constexpr std::array<Primitive, kMaxDimension - 1> kPrimitives = {{
    {1, 0, {1, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0}},
    {3, 1, {1, 3, 1, 0}},
    {3, 2, {1, 1, 1, 0}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
}};

constexpr int B = SobolSequence::kBits;
constexpr std::uint64_t kMask = (std::uint64_t{1} << B) - 1;

std::vector<std::uint64_t> directions_for(std::size_t axis) {
  std::vector<std::uint64_t> v(B + 1);  // 1-based
  if (axis == 0) {
    for (int k = 1; k <= B; ++k) v[k] = std::uint64_t{1} << (B - k);
  } else {
    const Primitive& p = kPrimitives[axis - 1];
    const int s = p.degree;
    for (int k = 1; k <= s; ++k) v[k] = p.m[k - 1] << (B - k);
    for (int k = s + 1; k <= B; ++k) {
      std::uint64_t next = v[k - s] ^ (v[k - s] >> s);
      for (int i = 1; i < s; ++i) {
        if ((p.coeffs >> (s - 1 - i)) & 1u) next ^= v[k - i];
      }
      v[k] = next;
    }
  }
  return {v.begin() + 1, v.end()};
}

}  // namespace

SobolSequence::SobolSequence(std::size_t dim) : dim_(dim), shift_(dim, 0) {
  if (dim == 0 || dim > kMaxDimension) throw std::invalid_argument("SobolSequence: dimension out of range");
  directions_.reserve(dim);
  for (std::size_t a = 0; a < dim; ++a) directions_.push_back(directions_for(a));
}

SobolSequence SobolSequence::scrambled(std::uint64_t stream_seed) const {
  std::mt19937_64 rng(stream_seed);
  SobolSequence out = *this;
  for (std::size_t a = 0; a < dim_; ++a) {
    // Random lower-triangular matrix with unit diagonal; row r (0 = most
    // significant digit) mixes digits 0..r.
    std::array<std::uint64_t, B> rows{};
    for (int r = 0; r < B; ++r) {
      const std::uint64_t own = std::uint64_t{1} << (B - 1 - r);
      const std::uint64_t higher = kMask & ~((own << 1) - 1);
      rows[r] = own | (rng() & higher);
    }
    for (auto& v : out.directions_[a]) {
      std::uint64_t scrambled = 0;
      for (int r = 0; r < B; ++r) {
        if (std::popcount(v & rows[r]) & 1) scrambled |= std::uint64_t{1} << (B - 1 - r);
      }
      v = scrambled;
    }
    out.shift_[a] = rng() & kMask;
  }
  return out;
}

void SobolSequence::point(std::uint64_t index, std::span<double> out) const {
  constexpr double scale = 1.0 / static_cast<double>(std::uint64_t{1} << B);
  for (std::size_t a = 0; a < dim_; ++a) {
    std::uint64_t bits = shift_[a];
    std::uint64_t i = index;
    for (int k = 0; i != 0; ++k, i >>= 1) {
      if (i & 1u) bits ^= directions_[a][k];
    }
    out[a] = static_cast<double>(bits) * scale;
  }
}

}  // namespace arctn::detail
