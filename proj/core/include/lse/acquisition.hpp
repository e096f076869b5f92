#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lse/lookahead.hpp"
#include "lse/posterior_query.hpp"
#include "lse/types.hpp"

namespace lse::acq {

enum class AcquisitionTag {
  kStraddleZ,
  kLocalSUR,
  kGlobalSUR,
  kLocalMI,
  kGlobalMI,
  kEAVC,
  kBALV,
  kBALD,
  kQuasiRandom,
};

/// Canonical names: "StraddleZ", "LocalSUR", "GlobalSUR", "LocalMI",
/// "GlobalMI", "EAVC", "BALV", "BALD", "QuasiRandom".
std::string_view to_string(AcquisitionTag tag);
/// Case-insensitive; throws ConfigError for unknown names.
AcquisitionTag parse_acquisition_tag(std::string_view name);
const std::vector<AcquisitionTag>& all_acquisition_tags();

inline constexpr double kDefaultStraddleBeta = 1.96;

/// Acquisition tag plus beta, which exists only for StraddleZ.
class AcquisitionKind {
 public:
  /// Throws ConfigError if beta is given for a tag other than StraddleZ or
  /// is non-finite. StraddleZ defaults to beta = 1.96.
  explicit AcquisitionKind(AcquisitionTag tag, std::optional<double> beta = std::nullopt);
  static AcquisitionKind parse(std::string_view name, std::optional<double> beta = std::nullopt);

  AcquisitionTag tag() const { return tag_; }
  std::optional<double> beta() const { return beta_; }
  std::string_view name() const { return to_string(tag_); }
  /// Sums look-ahead effects over a reference set.
  bool is_global() const;

 private:
  AcquisitionTag tag_;
  std::optional<double> beta_;
};

/// Quasi-random points over which global acquisitions are summed, with the
/// volume constant C = Vol(B) / |G|.
struct ReferenceSet {
  Matrix points;
  double volume_constant = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  /// Scrambled Sobol points mapped into `bounds`.
  static ReferenceSet generate(const Bounds& bounds, std::size_t size, std::uint64_t seed);
};

/// -|E z - theta| + beta * sd(z) with z = Phi(f), f ~ N(mu, sigma^2).
double straddle_z(double mu, double sigma, double theta, double beta = kDefaultStraddleBeta);

/// Expected reduction of min(pi, 1 - pi) at x_q from observing at x_*.
double sur_reduction(const LookaheadPosteriors& post);
/// Expected reduction of the binary entropy (bits) of pi at x_q.
double mi_reduction(const LookaheadPosteriors& post);

/// Local variants take the joint posterior of (f(x_q), f(x_*)); in normal use
/// x_q = x_*, see PairPosterior::same_point.
double local_sur(const PairPosterior& pair, double gamma);
double local_mi(const PairPosterior& pair, double gamma);
double local_sur(double mu, double var, double gamma);
double local_mi(double mu, double var, double gamma);

/// Sums over the reference points in `query`, in a fixed value order so the
/// result does not depend on the order of the reference set.
double global_sur(const PosteriorQuery& query, double gamma);
double global_mi(const PosteriorQuery& query, double gamma);

/// p1 |V - V1| + (1 - p1) |V - V0| with V = C sum pi, V_y = C sum pi_y.
double eavc(const PosteriorQuery& query, double gamma, double volume_constant);

/// Var[z], z = Phi(f).
double balv(double mu, double sigma);
/// H_b(P(y = 1)) - E_f[H_b(Phi(f))], with the expectation by 30-node Gauss-Hermite.
double bald(double mu, double sigma);

/// Value of a scalar acquisition at the candidate in `query` (global kinds
/// also use its reference-point entries). Throws ConfigError for QuasiRandom.
double evaluate(const AcquisitionKind& kind, const PosteriorQuery& query, double theta,
                double volume_constant);

}  // namespace lse::acq
