#include "lse/bench/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lse/lookahead.hpp"
#include "lse/problems.hpp"

namespace lse::bench {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

void read_surrogate(const json& j, gp::SurrogateConfig& s) {
  reject_unknown(j,
                 {"max_inducing", "max_iterations", "relative_tolerance", "kmeans_restarts",
                  "kmeans_max_iterations", "quadrature_nodes", "base_jitter", "max_jitter",
                  "lengthscale_median", "lengthscale_log_sd", "outputscale_median",
                  "outputscale_log_sd"},
                 "surrogate");
  read(j, "max_inducing", s.max_inducing);
  read(j, "max_iterations", s.max_iterations);
  read(j, "relative_tolerance", s.relative_tolerance);
  read(j, "kmeans_restarts", s.kmeans_restarts);
  read(j, "kmeans_max_iterations", s.kmeans_max_iterations);
  read(j, "quadrature_nodes", s.quadrature_nodes);
  read(j, "base_jitter", s.base_jitter);
  read(j, "max_jitter", s.max_jitter);
  read(j, "lengthscale_median", s.prior.lengthscale_median);
  read(j, "lengthscale_log_sd", s.prior.lengthscale_log_sd);
  read(j, "outputscale_median", s.prior.outputscale_median);
  read(j, "outputscale_log_sd", s.prior.outputscale_log_sd);
}

void read_optimizer(const json& j, optim::MaximizeBudget& b) {
  reject_unknown(j,
                 {"raw_candidates", "refine_starts", "refine_iterations", "fd_step", "initial_step",
                  "max_step", "max_backtracks"},
                 "optimizer");
  read(j, "raw_candidates", b.raw_candidates);
  read(j, "refine_starts", b.refine_starts);
  read(j, "refine_iterations", b.refine_iterations);
  read(j, "fd_step", b.fd_step);
  read(j, "initial_step", b.initial_step);
  read(j, "max_step", b.max_step);
  read(j, "max_backtracks", b.max_backtracks);
}

}  // namespace

void ExperimentConfig::validate() const {
  const problems::Problem& p = problems::get_problem(problem);
  (void)kind();
  const double t = resolved_theta();
  if (!(t > 0.0 && t < 1.0)) throw ConfigError("theta must lie in (0, 1)");
  if (p.dim() == 0) throw ConfigError("problem has zero dimension");
  if (initial_design_size < 2) throw ConfigError("initial_design_size must be >= 2");
  if (total_iterations < initial_design_size) {
    throw ConfigError("total_iterations must be >= initial_design_size");
  }
  if (reference_set_size < 1) throw ConfigError("reference_set_size must be >= 1");
  if (test_set_size < 1) throw ConfigError("test_set_size must be >= 1");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (refit_every < 1) throw ConfigError("refit_every must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  surrogate.validate();
  optimizer.validate();
}

double ExperimentConfig::resolved_theta() const {
  return theta.value_or(problems::get_problem(problem).theta);
}

acq::AcquisitionKind ExperimentConfig::kind() const { return acq::AcquisitionKind::parse(acquisition, beta); }

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (!j.contains("schema_version")) throw ConfigError("config is missing schema_version");
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw ConfigError("unsupported schema_version " + std::to_string(version));
    }
    reject_unknown(j,
                   {"schema_version", "problem", "acquisition", "beta", "theta", "total_iterations",
                    "initial_design_size", "reference_set_size", "test_set_size", "replications",
                    "seed", "refit_every", "output_dir", "workers", "surrogate", "optimizer"},
                   "config");
    read(j, "problem", c.problem);
    read(j, "acquisition", c.acquisition);
    if (j.contains("beta") && !j.at("beta").is_null()) c.beta = j.at("beta").get<double>();
    if (j.contains("theta") && !j.at("theta").is_null()) c.theta = j.at("theta").get<double>();
    read(j, "total_iterations", c.total_iterations);
    read(j, "initial_design_size", c.initial_design_size);
    read(j, "reference_set_size", c.reference_set_size);
    read(j, "test_set_size", c.test_set_size);
    read(j, "replications", c.replications);
    read(j, "seed", c.seed);
    read(j, "refit_every", c.refit_every);
    read(j, "output_dir", c.output_dir);
    read(j, "workers", c.workers);
    if (j.contains("surrogate")) read_surrogate(j.at("surrogate"), c.surrogate);
    if (j.contains("optimizer")) read_optimizer(j.at("optimizer"), c.optimizer);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["problem"] = c.problem;
  j["acquisition"] = c.acquisition;
  j["beta"] = c.beta ? json(*c.beta) : json(nullptr);
  j["theta"] = c.resolved_theta();
  j["total_iterations"] = c.total_iterations;
  j["initial_design_size"] = c.initial_design_size;
  j["reference_set_size"] = c.reference_set_size;
  j["test_set_size"] = c.test_set_size;
  j["replications"] = c.replications;
  j["seed"] = c.seed;
  j["refit_every"] = c.refit_every;
  j["output_dir"] = c.output_dir;
  j["workers"] = c.workers;
  const auto& s = c.surrogate;
  j["surrogate"] = {{"max_inducing", s.max_inducing},
                    {"max_iterations", s.max_iterations},
                    {"relative_tolerance", s.relative_tolerance},
                    {"kmeans_restarts", s.kmeans_restarts},
                    {"kmeans_max_iterations", s.kmeans_max_iterations},
                    {"quadrature_nodes", s.quadrature_nodes},
                    {"base_jitter", s.base_jitter},
                    {"max_jitter", s.max_jitter},
                    {"lengthscale_median", s.prior.lengthscale_median},
                    {"lengthscale_log_sd", s.prior.lengthscale_log_sd},
                    {"outputscale_median", s.prior.outputscale_median},
                    {"outputscale_log_sd", s.prior.outputscale_log_sd}};
  const auto& b = c.optimizer;
  j["optimizer"] = {{"raw_candidates", b.raw_candidates},   {"refine_starts", b.refine_starts},
                    {"refine_iterations", b.refine_iterations}, {"fd_step", b.fd_step},
                    {"initial_step", b.initial_step},       {"max_step", b.max_step},
                    {"max_backtracks", b.max_backtracks}};
  return j.dump(2);
}

}  // namespace lse::bench
