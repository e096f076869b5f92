#include "lse/optim/sobol.hpp"

#include <bit>
#include <random>
#include <string>

#include "lse/error.hpp"

namespace lse::optim {
namespace {

struct Primitive {
  int degree;
  std::uint32_t coeffs;  // interior polynomial coefficients a_1..a_{s-1}, MSB first
  std::array<std::uint32_t, 7> m;
};

// Joe & Kuo (2008) new-joe-kuo-6.21201, dimensions 2..21. Dimension 1 is the
// van der Corput sequence.
constexpr std::array<Primitive, 20> kPrimitives = {{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
}};

std::array<std::uint32_t, 32> direction_numbers(std::size_t axis) {
  std::array<std::uint32_t, 32> v{};
  if (axis == 0) {
    for (int k = 0; k < 32; ++k) v[k] = 1u << (31 - k);
    return v;
  }
  const Primitive& p = kPrimitives[axis - 1];
  const int s = p.degree;
  for (int k = 0; k < s; ++k) v[k] = p.m[k] << (31 - k);
  for (int k = s; k < 32; ++k) {
    std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
    for (int i = 1; i < s; ++i) {
      if ((p.coeffs >> (s - 1 - i)) & 1u) value ^= v[k - i];
    }
    v[k] = value;
  }
  return v;
}

// Left-multiplies each direction number by a random unit lower-triangular
// binary matrix (bit 0 = most significant).
void linear_matrix_scramble(std::array<std::uint32_t, 32>& v, std::mt19937_64& rng) {
  std::array<std::uint32_t, 32> rows{};
  for (int i = 0; i < 32; ++i) {
    std::uint32_t row = 1u << (31 - i);
    for (int b = 0; b < i; ++b) {
      if (rng() & 1u) row |= 1u << (31 - b);
    }
    rows[i] = row;
  }
  for (auto& value : v) {
    std::uint32_t out = 0;
    for (int i = 0; i < 32; ++i) {
      if (std::popcount(rows[i] & value) & 1) out |= 1u << (31 - i);
    }
    value = out;
  }
}

}  // namespace

SobolStream::SobolStream(std::size_t dim, std::optional<std::uint64_t> scramble_seed)
    : dim_(dim), scrambled_(scramble_seed.has_value()) {
  if (dim == 0 || dim > kMaxDim) {
    throw ConfigError("sobol: dimension " + std::to_string(dim) + " outside [1, " +
                      std::to_string(kMaxDim) + "]");
  }
  directions_.resize(dim);
  state_.assign(dim, 0u);
  std::mt19937_64 rng(scramble_seed.value_or(0));
  for (std::size_t j = 0; j < dim; ++j) {
    directions_[j] = direction_numbers(j);
    if (scrambled_) linear_matrix_scramble(directions_[j], rng);
  }
  if (scrambled_) {
    for (auto& s : state_) s = static_cast<std::uint32_t>(rng() >> 32);
  } else {
    advance();  // skip the origin
  }
}

void SobolStream::advance() {
  ++index_;
  const int bit = std::countr_zero(index_);
  for (std::size_t j = 0; j < dim_; ++j) state_[j] ^= directions_[j][bit];
}

Vector SobolStream::next() {
  if (index_ >= (std::uint64_t{1} << 32) - 1) throw ConfigError("sobol: stream exhausted");
  Vector out(static_cast<Eigen::Index>(dim_));
  for (std::size_t j = 0; j < dim_; ++j) out[static_cast<Eigen::Index>(j)] = state_[j] * 0x1.0p-32;
  advance();
  ++emitted_;
  return out;
}

Matrix SobolStream::draw(std::size_t n) {
  Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < n; ++i) out.row(static_cast<Eigen::Index>(i)) = next().transpose();
  return out;
}

}  // namespace lse::optim
