#include "lse/gp/checkpoint.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lse/error.hpp"

namespace lse::gp {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "lse-gp-model";

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
    rows.push_back(row);
  }
  return rows;
}

Vector vector_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Matrix matrix_from(const json& j, Eigen::Index cols) {
  Matrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto row = j.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != cols) throw ConfigError("checkpoint: ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

}  // namespace

std::string to_checkpoint(const GpModel& model) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kCheckpointVersion;
  doc["bounds"] = {{"lo", to_json(model.bounds().lo())}, {"hi", to_json(model.bounds().hi())}};
  doc["kernel"] = {{"lengthscales", to_json(model.kernel().lengthscales)},
                   {"outputscale", model.kernel().outputscale}};
  doc["inducing_unit"] = to_json(model.inducing_unit());
  doc["variational_mean"] = to_json(model.variational_mean());
  doc["variational_chol"] = to_json(model.variational_chol());
  doc["jitter"] = model.jitter();
  const FitDiagnostics& d = model.diagnostics();
  doc["diagnostics"] = {{"elbo", std::isfinite(d.elbo) ? json(d.elbo) : json(nullptr)},
                        {"iterations", d.iterations},
                        {"from_scratch", d.from_scratch},
                        {"termination", d.termination}};
  if (model.data()) {
    const Dataset& data = *model.data();
    doc["data"] = {{"points", to_json(data.points())}, {"outcomes", data.outcomes()}};
  }
  return doc.dump(1);
}

GpModel from_checkpoint(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kFormat) throw ConfigError("checkpoint: unknown format");
    const int version = doc.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw ConfigError("checkpoint: unsupported version " + std::to_string(version));
    }
    Bounds bounds(vector_from(doc.at("bounds").at("lo")), vector_from(doc.at("bounds").at("hi")));
    const auto d = static_cast<Eigen::Index>(bounds.dim());
    KernelParams kernel{vector_from(doc.at("kernel").at("lengthscales")),
                        doc.at("kernel").at("outputscale").get<double>()};
    Matrix inducing = matrix_from(doc.at("inducing_unit"), d);
    Vector mean = vector_from(doc.at("variational_mean"));
    Matrix chol = matrix_from(doc.at("variational_chol"), mean.size());
    const double jitter = doc.at("jitter").get<double>();

    FitDiagnostics diag;
    const json& jd = doc.at("diagnostics");
    if (!jd.at("elbo").is_null()) diag.elbo = jd.at("elbo").get<double>();
    diag.iterations = jd.at("iterations").get<int>();
    diag.from_scratch = jd.at("from_scratch").get<bool>();
    diag.termination = jd.at("termination").get<std::string>();

    std::optional<Dataset> data;
    if (doc.contains("data")) {
      data.emplace(bounds, matrix_from(doc.at("data").at("points"), d),
                   doc.at("data").at("outcomes").get<std::vector<std::uint8_t>>());
    }
    return GpModel(std::move(bounds), std::move(inducing), std::move(kernel), std::move(mean),
                   std::move(chol), std::move(data), std::move(diag), jitter, jitter);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const GpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write checkpoint " + path.string());
  out << to_checkpoint(model) << '\n';
}

GpModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_checkpoint(buf.str());
}

}  // namespace lse::gp
