#include "lse/bench/trace_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lse/error.hpp"

namespace lse::bench {
namespace {

constexpr int kFixedColumns = 9;

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  if (s == "nan" || s == "-nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("trace: bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("trace: bad number '" + s + "'");
  }
}

void write_number(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
  } else {
    out << v;
  }
}

}  // namespace

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  const std::size_t d = trace.bounds.dim();
  out.precision(17);
  out << "iteration,active,outcome,brier,class_error,edge,fit_seconds,acquisition_seconds,acquisition_value";
  for (std::size_t j = 0; j < d; ++j) out << ",x" << j + 1;
  out << ",status\n";
  for (const IterationRecord& r : trace.records) {
    out << r.iteration << ',' << (r.active ? 1 : 0) << ',' << r.outcome << ',';
    write_number(out, r.brier);
    out << ',';
    write_number(out, r.class_error);
    out << ',' << (r.edge ? 1 : 0) << ',' << r.fit_seconds << ',' << r.acquisition_seconds << ',';
    write_number(out, r.acquisition_value);
    for (Eigen::Index j = 0; j < r.point.size(); ++j) out << ',' << r.point[j];
    out << ",ok\n";
  }
  if (trace.failed) {
    std::string msg = trace.error;
    for (char& c : msg) {
      if (c == ',' || c == '\n' || c == '\r') c = ' ';
    }
    out << trace.error_iteration;
    for (std::size_t k = 1; k < kFixedColumns + d; ++k) out << ',';
    out << ",error: " << msg << '\n';
  }
}

RunTrace read_trace_csv(std::istream& in, const Bounds& bounds, int replication) {
  RunTrace trace;
  trace.bounds = bounds;
  trace.replication = replication;
  const std::size_t d = bounds.dim();
  const std::size_t columns = kFixedColumns + d + 1;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("trace: empty file");
  if (split(line).size() != columns) throw ConfigError("trace: header does not match the dimension");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != columns) throw ConfigError("trace: wrong number of columns");
    const std::string& status = cells.back();
    if (status.rfind("error", 0) == 0) {
      trace.failed = true;
      trace.error_iteration = static_cast<int>(to_double(cells[0]));
      trace.error = status.size() > 7 ? status.substr(7) : std::string();
      continue;
    }
    IterationRecord r;
    r.iteration = static_cast<int>(to_double(cells[0]));
    r.active = cells[1] == "1";
    r.outcome = static_cast<int>(to_double(cells[2]));
    r.brier = to_double(cells[3]);
    r.class_error = to_double(cells[4]);
    r.edge = cells[5] == "1";
    r.fit_seconds = to_double(cells[6]);
    r.acquisition_seconds = to_double(cells[7]);
    r.acquisition_value = to_double(cells[8]);
    r.point.resize(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) r.point[static_cast<Eigen::Index>(j)] = to_double(cells[kFixedColumns + j]);
    trace.records.push_back(std::move(r));
  }
  return trace;
}

}  // namespace lse::bench
