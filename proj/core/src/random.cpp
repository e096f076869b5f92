#include "lse/random.hpp"

#include <array>

namespace lse {

std::string_view stream_name(StreamId id) {
  switch (id) {
    case StreamId::kDesign: return "design";
    case StreamId::kTestSet: return "test_set";
    case StreamId::kOutcomes: return "outcomes";
    case StreamId::kFit: return "fit";
    case StreamId::kReferenceSet: return "reference_set";
    case StreamId::kCandidates: return "candidates";
  }
  return "unknown";
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t replication, StreamId stream,
                          std::uint64_t index) {
  const std::array<std::uint32_t, 7> words = {
      static_cast<std::uint32_t>(base_seed),   static_cast<std::uint32_t>(base_seed >> 32),
      static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32),
      static_cast<std::uint32_t>(stream),      static_cast<std::uint32_t>(index),
      static_cast<std::uint32_t>(index >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace lse
