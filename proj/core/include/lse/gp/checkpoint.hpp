#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lse/gp/model.hpp"

namespace lse::gp {

inline constexpr int kCheckpointVersion = 1;

/// JSON document with a format tag and version, bounds, kernel, inducing
/// points, variational state, jitter, fit diagnostics and (if attached) the
/// training data. Doubles are written with round-trip precision, so
/// `from_checkpoint(to_checkpoint(m))` reproduces m's predictions exactly.
std::string to_checkpoint(const GpModel& model);

/// Throws ConfigError on malformed input or an unsupported version.
GpModel from_checkpoint(std::string_view text);

void save_checkpoint(const GpModel& model, const std::filesystem::path& path);
GpModel load_checkpoint(const std::filesystem::path& path);

}  // namespace lse::gp
