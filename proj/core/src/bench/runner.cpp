#include "lse/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "lse/bench/trace_io.hpp"
#include "lse/gp/checkpoint.hpp"
#include "lse/problems.hpp"

namespace lse::bench {
namespace {

namespace fs = std::filesystem;

std::string numbered(const char* prefix, int rep, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03d.%s", prefix, rep, ext);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

void write_aggregate_files(const Aggregate& agg, const fs::path& dir) {
  {
    auto out = open_out(dir / "aggregate.csv");
    write_aggregate_csv(agg, out);
  }
  for (const char* metric : {"brier", "class_error"}) {
    auto out = open_out(dir / (std::string("plot_") + metric + ".csv"));
    write_plot_data(agg, metric, out);
  }
  auto out = open_out(dir / "summary.json");
  out << summary_json(agg) << '\n';
}

}  // namespace

RunSummary run_benchmark(ExperimentConfig config, std::optional<int> replications,
                         std::optional<int> workers, std::ostream* log) {
  if (replications) config.replications = *replications;
  if (workers) config.workers = *workers;
  config.validate();

  const fs::path dir = config.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  {
    auto out = open_out(dir / "config.json");
    out << to_json(config) << '\n';
  }

  const int n = config.replications;
  std::vector<RunTrace> traces(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  std::mutex log_mutex;

  auto work = [&] {
    for (int rep = next++; rep < n; rep = next++) {
      const auto i = static_cast<std::size_t>(rep);
      try {
        traces[i] = run_experiment(config, rep);
        {
          auto out = open_out(dir / numbered("rep", rep, "csv"));
          write_trace_csv(traces[i], out);
        }
        if (traces[i].final_model) gp::save_checkpoint(*traces[i].final_model, dir / numbered("model", rep, "json"));
        traces[i].final_model.reset();
        if (log != nullptr) {
          const std::lock_guard lock(log_mutex);
          *log << "replication " << rep << (traces[i].failed ? " failed: " + traces[i].error : " done")
               << '\n';
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min(config.workers, n);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RunSummary summary;
  summary.directory = dir;
  summary.aggregate = aggregate(traces);
  summary.failed = summary.aggregate.failed;
  summary.completed = n - summary.failed;
  write_aggregate_files(summary.aggregate, dir);
  return summary;
}

Aggregate aggregate_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError(dir.string() + " is not a directory");
  const ExperimentConfig config = load_config(dir / "config.json");
  const Bounds& bounds = problems::get_problem(config.problem).bounds;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("rep_", 0) == 0 && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  if (files.empty()) throw ConfigError("no rep_*.csv traces in " + dir.string());
  std::sort(files.begin(), files.end());
  std::vector<RunTrace> traces;
  for (const auto& f : files) {
    std::ifstream in(f);
    const int rep = std::stoi(f.stem().string().substr(4));
    traces.push_back(read_trace_csv(in, bounds, rep));
  }
  Aggregate agg = aggregate(traces);
  write_aggregate_files(agg, dir);
  return agg;
}

}  // namespace lse::bench
