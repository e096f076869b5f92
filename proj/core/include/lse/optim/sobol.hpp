#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lse/types.hpp"

namespace lse::optim {

/// Sobol low-discrepancy stream (Joe-Kuo direction numbers, up to 21 dims).
///
/// Unscrambled streams skip the all-zero first point, so a 1-d stream starts
/// 0.5, 0.75, 0.25, ... Scrambled streams apply a random linear matrix
/// scramble plus a digital shift, both drawn from the seed, and keep the
/// first point (it is the shift itself).
class SobolStream {
 public:
  static constexpr std::size_t kMaxDim = 21;

  /// Throws ConfigError if dim is 0 or above kMaxDim.
  explicit SobolStream(std::size_t dim, std::optional<std::uint64_t> scramble_seed = std::nullopt);

  std::size_t dim() const { return dim_; }
  bool scrambled() const { return scrambled_; }
  /// Number of points emitted so far.
  std::uint64_t counter() const { return emitted_; }

  /// Next n points as an n x dim matrix in [0, 1)^dim.
  Matrix draw(std::size_t n);
  Vector next();

 private:
  void advance();

  std::size_t dim_;
  bool scrambled_;
  std::uint64_t index_ = 0;  // sequence index of the current state
  std::uint64_t emitted_ = 0;
  std::vector<std::array<std::uint32_t, 32>> directions_;
  std::vector<std::uint32_t> state_;
};

}  // namespace lse::optim
