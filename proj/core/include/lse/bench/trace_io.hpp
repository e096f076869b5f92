#pragma once

#include <iosfwd>

#include "lse/bench/experiment.hpp"

namespace lse::bench {

/// Columns: iteration, active, outcome, brier, class_error, edge,
/// fit_seconds, acquisition_seconds, acquisition_value, x1..xd, status.
/// A failed run ends with a row whose status is "error: <message>".
void write_trace_csv(const RunTrace& trace, std::ostream& out);

/// Inverse of write_trace_csv; the model checkpoint is not restored.
/// Throws ConfigError on malformed input.
RunTrace read_trace_csv(std::istream& in, const Bounds& bounds, int replication);

}  // namespace lse::bench
