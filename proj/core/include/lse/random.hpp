#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lse {

/// Independent randomness sources inside one benchmark replication. Every
/// identifier maps to a disjoint seed sequence, so e.g. the held-out test set
/// can never share draws with anything the model or optimizer sees.
enum class StreamId : std::uint32_t {
  kDesign = 1,      // initial design and quasi-random continuation
  kTestSet = 2,     // held-out evaluation points
  kOutcomes = 3,    // Bernoulli draws
  kFit = 4,         // k-means restarts
  kReferenceSet = 5,
  kCandidates = 6,  // raw acquisition candidates
};

std::string_view stream_name(StreamId id);

/// Deterministic 64-bit seed for (base seed, replication, stream, index).
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t replication, StreamId stream,
                          std::uint64_t index = 0);

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Uniform double in [0, 1) built from the top 53 bits; identical across
/// standard libraries, unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace lse
