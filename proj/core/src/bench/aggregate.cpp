#include "lse/bench/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include <json.hpp>

#include "lse/error.hpp"

namespace lse::bench {
namespace {

double sorted_sum(const std::vector<double>& sorted) {
  double s = 0.0;
  for (double v : sorted) s += v;
  return s;
}

nlohmann::json to_json(const MetricSummary& m) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  return {{"mean", num(m.mean)}, {"two_sem", num(m.two_sem)}, {"n", m.n}};
}

}  // namespace

MetricSummary summarize(std::vector<double> values) {
  MetricSummary s;
  s.n = static_cast<int>(values.size());
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  s.mean = sorted_sum(values) / n;
  if (values.size() == 1) {
    s.two_sem = 0.0;
    return s;
  }
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - s.mean) * (values[i] - s.mean);
  std::sort(sq.begin(), sq.end());
  const double sd = std::sqrt(sorted_sum(sq) / (n - 1.0));
  s.two_sem = 2.0 * sd / std::sqrt(n);
  return s;
}

Aggregate aggregate(const std::vector<RunTrace>& traces) {
  Aggregate agg;
  agg.replications = static_cast<int>(traces.size());
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_iteration;
  std::vector<double> final_brier;
  std::vector<double> final_error;
  std::vector<double> edge;
  for (const RunTrace& t : traces) {
    for (const IterationRecord& r : t.records) {
      if (!r.has_metrics()) continue;
      auto& slot = by_iteration[r.iteration];
      slot.first.push_back(r.brier);
      slot.second.push_back(r.class_error);
    }
    if (t.failed) {
      ++agg.failed;
      continue;
    }
    if (const IterationRecord* last = t.last_scored()) {
      final_brier.push_back(last->brier);
      final_error.push_back(last->class_error);
    }
    edge.push_back(t.edge_rate());
  }
  for (auto& [iteration, values] : by_iteration) {
    agg.rows.push_back({iteration, summarize(std::move(values.first)), summarize(std::move(values.second))});
  }
  agg.final_brier = summarize(std::move(final_brier));
  agg.final_class_error = summarize(std::move(final_error));
  agg.edge_rate = summarize(std::move(edge));
  return agg;
}

void write_aggregate_csv(const Aggregate& agg, std::ostream& out) {
  out.precision(17);
  out << "iteration,n,brier_mean,brier_two_sem,class_error_mean,class_error_two_sem\n";
  for (const AggregateRow& r : agg.rows) {
    out << r.iteration << ',' << r.brier.n << ',' << r.brier.mean << ',' << r.brier.two_sem << ','
        << r.class_error.mean << ',' << r.class_error.two_sem << '\n';
  }
}

void write_plot_data(const Aggregate& agg, const std::string& metric, std::ostream& out) {
  const bool is_brier = metric == "brier";
  if (!is_brier && metric != "class_error") throw ConfigError("unknown metric '" + metric + "'");
  out.precision(17);
  out << "iteration,mean,two_sem\n";
  for (const AggregateRow& r : agg.rows) {
    const MetricSummary& m = is_brier ? r.brier : r.class_error;
    out << r.iteration << ',' << m.mean << ',' << m.two_sem << '\n';
  }
}

std::string summary_json(const Aggregate& agg) {
  nlohmann::json j;
  j["replications"] = agg.replications;
  j["failed"] = agg.failed;
  j["final_brier"] = to_json(agg.final_brier);
  j["final_class_error"] = to_json(agg.final_class_error);
  j["edge_rate"] = to_json(agg.edge_rate);
  return j.dump(2);
}

}  // namespace lse::bench
