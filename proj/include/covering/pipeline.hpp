#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "covering/bounds.hpp"
#include "covering/certificate.hpp"
#include "covering/greedy.hpp"
#include "covering/shapes.hpp"

namespace covering {

// End-to-end run parameters. Exactly one of epsilon / mu should be given;
// with neither, the default is eps = r/(mu n + 1) with mu = max(ln n, 1+1e-6).
struct RunConfig {
  SpaceDescriptor space;
  double radius = 0.0;
  std::optional<double> epsilon;
  std::optional<double> mu;
  std::size_t samples = 10000;
  std::size_t net = 0;  // 0 -> 10 * samples
  std::uint64_t seed = 0;
  Engine engine = Engine::Lazy;
  std::optional<std::filesystem::path> candidates_csv;

  double resolved_epsilon() const;
  double resolved_mu() const;  // derived from epsilon when mu is unset
  std::size_t resolved_net() const { return net ? net : 10 * samples; }
  void validate() const;  // throws std::invalid_argument naming the field
};

struct VerificationReport {
  double radius = 0.0;
  std::size_t net_size = 0;
  std::uint64_t net_seed = 0;
  std::size_t num_centers = 0;

  double covering_radius_observed = 0.0;
  double covered_fraction_at_r = 0.0;
  double density = 0.0;  // |Y| * omega_r; NaN on finite spaces

  // Bound comparisons; theorem1_upper and corollary are filled by the
  // pipeline, which knows epsilon and mu.
  double lower = 0.0;
  double theorem1_upper = 0.0;
  double corollary = 0.0;

  double slack = 0.0;              // max(0, observed - r) / r
  double slack_lower_bound = 0.0;  // 1 / omega_{r (1 + slack)}
  bool lower_check_applicable = false;
  bool lower_check_pass = false;
  bool radius_capped = false;  // slack radius clipped to the measurable range
};

// Samples a fresh net and reports the observed covering radius, the
// covered fraction at r, the density and the slack-adjusted lower bound.
VerificationReport verify_covering(const SpaceDescriptor& space, const std::vector<Point>& centers,
                                   double r, std::size_t net_size, std::uint64_t seed);

// Fraction of `points` within r of some center (construction replay).
double covered_fraction(const SpaceDescriptor& space, const std::vector<Point>& centers,
                        double r, const std::vector<Point>& points);

std::uint64_t derive_net_seed(std::uint64_t seed);

struct RunArtifacts {
  CoveringRun run;
  DualCertificate certificate;
  // Unset when epsilon >= select_radius (outside the r/2 > eps regime);
  // the run still completes but the dual comparison is skipped.
  std::optional<CertificateReport> certificate_report;
  std::string certificate_skip_reason;
  TerminationReport termination;
  VerificationReport verification;
  std::optional<BoundsReport> bounds;  // unset on finite spaces

  bool construction_replay_exact = false;
  bool hard_invariants_ok = false;
  std::string invariant_violation;
};

// cloud -> greedy -> certificate -> termination -> fresh-net verification.
RunArtifacts execute_run(const RunConfig& config);

// execute_run plus run.json / certificate.json / verification.json under
// out_dir. Artifacts are byte-identical for identical configs.
RunArtifacts run_cover(const RunConfig& config, const std::filesystem::path& out_dir);

// One CSV row per dimension; per-dimension failures become error rows.
std::string density_curve(const std::vector<int>& dims, const RunConfig& base);

struct ShapeRunConfig {
  ShapePair pair;
  int dim = 2;
  std::size_t samples = 5000;
  std::uint64_t seed = 0;
  Engine engine = Engine::Lazy;
  std::size_t validation_samples = 10000;
  std::size_t volume_translates = 32;
};

struct ShapeCoverReport {
  bool pair_valid = false;
  std::size_t num_centers = 0;
  double outer_volume = 0.0;  // empirical
  double inner_volume = 0.0;
  double half_ball_volume = 0.0;  // ball of radius outer.radius / 2
  double density = 0.0;           // |Y| * outer_volume
  NaszodiBounds bounds;           // from the empirical volumes
  bool covered = false;
  bool density_within_bound = false;  // density <= improved * 1.1
};

struct ShapeRunArtifacts {
  CoveringRun run;
  ShapeCoverReport report;
};

ShapeRunArtifacts execute_shape_run(const ShapeRunConfig& config);

// Exclusive per-directory lock held while artifacts are written.
class DirectoryLock {
 public:
  explicit DirectoryLock(const std::filesystem::path& dir);
  ~DirectoryLock();
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace covering
