#include "covering/pipeline.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "covering/io.hpp"
#include "covering/parallel.hpp"
#include "covering/serialize.hpp"

namespace covering {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << '\n';
}

double safe_ball_measure(const SpaceDescriptor& space, double r) {
  try {
    return ball_measure(space, r);
  } catch (const std::exception&) {
    return kNan;
  }
}

}  // namespace

double RunConfig::resolved_epsilon() const {
  if (epsilon) return *epsilon;
  double m;
  if (mu) {
    m = *mu;
  } else {
    m = std::max(std::log(static_cast<double>(space.dim())), 1.0 + 1e-6);
  }
  return radius / (m * static_cast<double>(space.dim()) + 1.0);
}

double RunConfig::resolved_mu() const {
  if (mu) return *mu;
  const double eps = resolved_epsilon();
  return (radius / eps - 1.0) / static_cast<double>(space.dim());
}

void RunConfig::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("radius: must be positive");
  if (space.kind() == SpaceKind::Torus && !(radius < 0.5))
    throw std::invalid_argument("radius: torus covering radius must be < 1/2");
  if (space.kind() == SpaceKind::Sphere && !(radius <= kPi))
    throw std::invalid_argument("radius: sphere covering radius must be <= pi");
  if (epsilon && mu) throw std::invalid_argument("epsilon: give either epsilon or mu, not both");
  const double eps = resolved_epsilon();
  if (!(eps > 0.0) || !(eps < radius))
    throw std::invalid_argument("epsilon: need 0 < epsilon < radius");
  if (samples == 0) throw std::invalid_argument("samples: must be >= 1");
  if (resolved_net() < samples)
    throw std::invalid_argument("net: verification net must be at least as large as the cloud");
}

std::uint64_t derive_net_seed(std::uint64_t seed) { return splitmix64(seed ^ 0x766e657431ull); }

VerificationReport verify_covering(const SpaceDescriptor& space, const std::vector<Point>& centers,
                                   double r, std::size_t net_size, std::uint64_t seed) {
  if (centers.empty()) throw std::invalid_argument("verify_covering: no centers");
  if (net_size == 0) throw std::invalid_argument("verify_covering: net must be >= 1");

  const std::vector<Point> net = sample(space, seed, net_size);

  constexpr std::size_t kChunks = 64;
  std::vector<double> chunk_max(kChunks, -1.0);
  std::vector<std::size_t> chunk_within(kChunks, 0);
  parallel_chunks(net.size(), kChunks, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    double worst = -1.0;
    std::size_t within = 0;
    for (std::size_t i = begin; i < end; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const Point& c : centers) nearest = std::min(nearest, distance(space, net[i], c));
      worst = std::max(worst, nearest);
      if (nearest <= r) ++within;
    }
    chunk_max[chunk] = worst;
    chunk_within[chunk] = within;
  });

  VerificationReport report;
  report.radius = r;
  report.net_size = net.size();
  report.net_seed = seed;
  report.num_centers = centers.size();
  report.covering_radius_observed = *std::max_element(chunk_max.begin(), chunk_max.end());
  std::size_t within = 0;
  for (std::size_t w : chunk_within) within += w;
  report.covered_fraction_at_r =
      static_cast<double>(within) / static_cast<double>(net.size());

  report.theorem1_upper = kNan;
  report.corollary = kNan;
  if (space.kind() == SpaceKind::Finite) {
    report.density = kNan;
    report.lower = kNan;
    report.slack_lower_bound = kNan;
    report.lower_check_applicable = false;
    report.lower_check_pass = true;
    report.slack = std::max(0.0, report.covering_radius_observed - r) / r;
    return report;
  }

  const double omega_r = safe_ball_measure(space, r);
  report.density = static_cast<double>(centers.size()) * omega_r;
  report.lower = 1.0 / omega_r;
  report.slack = std::max(0.0, report.covering_radius_observed - r) / r;
  double slack_radius = std::max(r, report.covering_radius_observed);
  if (space.kind() == SpaceKind::Torus && slack_radius >= 0.5) {
    slack_radius = std::nextafter(0.5, 0.0);
    report.radius_capped = true;
  }
  if (space.kind() == SpaceKind::Sphere && slack_radius > kPi) {
    slack_radius = kPi;
    report.radius_capped = true;
  }
  const double omega_slack = safe_ball_measure(space, slack_radius);
  report.slack_lower_bound = 1.0 / omega_slack;
  report.lower_check_applicable = std::isfinite(report.slack_lower_bound);
  report.lower_check_pass = !report.lower_check_applicable ||
                            static_cast<double>(centers.size()) >=
                                report.slack_lower_bound - 1e-9;
  return report;
}

double covered_fraction(const SpaceDescriptor& space, const std::vector<Point>& centers,
                        double r, const std::vector<Point>& points) {
  if (points.empty()) return 1.0;
  constexpr std::size_t kChunks = 64;
  std::vector<std::size_t> chunk_within(kChunks, 0);
  parallel_chunks(points.size(), kChunks, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    std::size_t within = 0;
    for (std::size_t i = begin; i < end; ++i) {
      for (const Point& c : centers) {
        if (distance(space, points[i], c) <= r) {
          ++within;
          break;
        }
      }
    }
    chunk_within[chunk] = within;
  });
  std::size_t within = 0;
  for (std::size_t w : chunk_within) within += w;
  return static_cast<double>(within) / static_cast<double>(points.size());
}

RunArtifacts execute_run(const RunConfig& config) {
  config.validate();
  const double eps = config.resolved_epsilon();
  const double select_radius = config.radius - eps;

  const EmpiricalMeasure cloud = build_cloud(config.space, config.samples, config.seed);
  std::vector<Point> candidates;
  if (config.candidates_csv) {
    for (const auto& row : load_distance_csv(*config.candidates_csv)) {
      if (config.space.kind() == SpaceKind::Finite) {
        if (row.size() != 1)
          throw ValidationError("candidates csv: finite spaces take one index per row");
        candidates.push_back(Point::at_index(static_cast<std::uint32_t>(row[0])));
      } else {
        if (row.size() != config.space.coord_count())
          throw ValidationError("candidates csv: wrong coordinate count");
        candidates.push_back(Point::from_coords(row));
      }
    }
    if (candidates.empty()) throw ValidationError("candidates csv: no rows");
  } else {
    candidates = cloud.points();
  }

  CoveringRun run = greedy_cover(cloud, std::move(candidates), select_radius, config.radius,
                                 config.engine);
  run.epsilon = eps;

  RunArtifacts artifacts{std::move(run), {}, std::nullopt, "", {}, {}, std::nullopt, false, false, ""};
  const CoveringRun& r = artifacts.run;

  const BallOracle oracle(cloud, select_radius, config.radius);
  artifacts.invariant_violation = run_invariant_violation(r, cloud, oracle);

  artifacts.certificate = build_certificate(r);
  if (eps < select_radius) {
    artifacts.certificate_report = check_certificate(artifacts.certificate, cloud, eps);
  } else {
    artifacts.certificate_skip_reason =
        "epsilon >= cover_radius/2: outside the dual analysis regime";
  }
  artifacts.termination = termination_bound_check(r, cloud, eps);

  if (config.space.kind() != SpaceKind::Finite)
    artifacts.bounds = bounds_report(config.space, config.radius, eps, config.resolved_mu());

  artifacts.verification = verify_covering(config.space, r.centers, config.radius,
                                           config.resolved_net(), derive_net_seed(config.seed));
  if (artifacts.bounds) {
    artifacts.verification.theorem1_upper = artifacts.bounds->upper;
    const double mu = config.resolved_mu();
    artifacts.verification.corollary =
        mu > 1.0 ? corollary_density_bound(config.space.dim(), mu) : kNan;
  }

  // Replay: the construction cloud must be exactly covered.
  std::vector<char> covered(cloud.size(), 0);
  for (const Point& y : r.centers)
    for (std::uint32_t p : oracle.cover_members(y)) covered[p] = 1;
  artifacts.construction_replay_exact =
      std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });

  artifacts.hard_invariants_ok =
      artifacts.invariant_violation.empty() && artifacts.construction_replay_exact &&
      (!artifacts.certificate_report ||
       (artifacts.certificate_report->total_mass_ok && artifacts.certificate_report->load_bound_ok)) &&
      (!artifacts.termination.applicable || artifacts.termination.pass);
  return artifacts;
}

RunArtifacts run_cover(const RunConfig& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  DirectoryLock lock(out_dir);
  RunArtifacts artifacts = execute_run(config);
  write_json_file(out_dir / "run.json", run_to_json(artifacts.run));
  write_json_file(out_dir / "certificate.json", certificate_artifact_json(artifacts));
  write_json_file(out_dir / "verification.json", verification_to_json(artifacts.verification));
  if (artifacts.bounds)
    write_json_file(out_dir / "bounds.json", bounds_report_to_json(*artifacts.bounds));
  return artifacts;
}

std::string density_curve(const std::vector<int>& dims, const RunConfig& base) {
  std::ostringstream csv;
  csv << "n,num_centers,density,upper_density,corollary_density,lower_density\n";
  char buf[64];
  const auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  for (int n : dims) {
    RunConfig config = base;
    try {
      config.space = base.space.kind() == SpaceKind::Sphere ? SpaceDescriptor::sphere(n)
                                                            : SpaceDescriptor::torus(n);
      const RunArtifacts artifacts = execute_run(config);
      const double omega_r = ball_measure(config.space, config.radius);
      const double upper_density =
          artifacts.bounds ? artifacts.bounds->upper * omega_r : kNan;
      const double corollary = n >= 3
                                   ? corollary_density_bound(n, std::log(static_cast<double>(n)))
                                   : corollary_density_bound(n, 2.0);
      csv << n << ',' << artifacts.run.iterations() << ',' << fmt(artifacts.verification.density)
          << ',' << fmt(upper_density) << ',' << fmt(corollary) << ",1\n";
    } catch (const std::exception& err) {
      std::string msg = err.what();
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      csv << n << ",ERROR," << msg << ",,,\n";
    }
  }
  return csv.str();
}

ShapeRunArtifacts execute_shape_run(const ShapeRunConfig& config) {
  const SpaceDescriptor space = SpaceDescriptor::torus(config.dim);
  const EmpiricalMeasure cloud = build_cloud(space, config.samples, config.seed);

  ShapeRunArtifacts artifacts{greedy_shape_cover(cloud, cloud.points(), config.pair, config.engine),
                              {}};
  ShapeCoverReport& report = artifacts.report;
  report.pair_valid =
      validate_shape_pair(space, config.pair, config.validation_samples, derive_net_seed(config.seed));
  report.num_centers = artifacts.run.iterations();

  const std::uint64_t vol_seed = splitmix64(config.seed ^ 0x73686170u);
  report.outer_volume =
      empirical_shape_volume(cloud, config.pair.outer, config.volume_translates, vol_seed);
  report.inner_volume =
      empirical_shape_volume(cloud, config.pair.inner, config.volume_translates, vol_seed + 1);
  UnionOfBalls half_ball;
  half_ball.offsets.assign(1, std::vector<double>(config.dim, 0.0));
  half_ball.radius = 0.5 * config.pair.outer.radius;
  report.half_ball_volume =
      empirical_shape_volume(cloud, half_ball, config.volume_translates, vol_seed + 2);

  report.density = static_cast<double>(report.num_centers) * report.outer_volume;
  // K is the union of outer balls; its delta-inner parallel body has
  // vanishing measure, so the original bound degenerates and the improved
  // form (denominator K_{-delta/2}, proxied by the inner shape) applies.
  // Monte Carlo noise may disorder the volumes slightly; clamp them back
  // into the containment order.
  const double vol_kd2 = std::min(std::max(report.inner_volume, report.half_ball_volume),
                                  report.outer_volume);
  const double vol_ball = std::min(report.half_ball_volume, vol_kd2);
  if (vol_ball > 0.0) {
    report.bounds = naszodi_bound(report.outer_volume, 0.0, vol_kd2, vol_ball);
  } else {
    report.bounds.original = std::numeric_limits<double>::infinity();
    report.bounds.improved = std::numeric_limits<double>::infinity();
    report.bounds.degenerate = true;
  }
  report.density_within_bound = report.density <= report.bounds.improved * 1.10;

  const ShapeOracle oracle(cloud, config.pair);
  std::vector<char> covered(cloud.size(), 0);
  for (const Point& y : artifacts.run.centers)
    for (std::uint32_t p : oracle.cover_members(y)) covered[p] = 1;
  report.covered = std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
  return artifacts;
}

DirectoryLock::DirectoryLock(const std::filesystem::path& dir) {
  path_ = dir / ".greedy-cover.lock";
  fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd_ < 0)
    throw std::runtime_error("output directory is locked by another instance: " + path_.string());
  const std::string pid = std::to_string(::getpid()) + "\n";
  if (::write(fd_, pid.data(), pid.size()) < 0) {
    // Lock exists either way; the pid note is best-effort.
  }
}

DirectoryLock::~DirectoryLock() {
  if (fd_ >= 0) {
    ::close(fd_);
    ::unlink(path_.c_str());
  }
}

}  // namespace covering
