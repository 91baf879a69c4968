// greedy-cover: greedy ball (and union-of-ball) coverings of compact
// homogeneous spaces over seeded empirical measures, with dual
// certificates, covering-density bounds and a-posteriori verification.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "covering/io.hpp"
#include "covering/pipeline.hpp"
#include "covering/serialize.hpp"

namespace {

using namespace covering;

struct SpaceOptions {
  std::string kind = "torus";
  int dim = 2;
  std::string distance_csv;
  std::string weights_csv;
};

void add_space_options(CLI::App* cmd, SpaceOptions& opts) {
  cmd->add_option("--space", opts.kind, "Space kind")
      ->check(CLI::IsMember({"sphere", "torus", "finite"}));
  cmd->add_option("--dim", opts.dim, "Dimension n (sphere S^n / torus T^n)");
  cmd->add_option("--distance-csv", opts.distance_csv,
                  "Distance matrix CSV for finite spaces");
  cmd->add_option("--weights-csv", opts.weights_csv,
                  "Point weights CSV for finite spaces (default: uniform)");
}

SpaceDescriptor make_space(const SpaceOptions& opts) {
  if (opts.kind == "sphere") return SpaceDescriptor::sphere(opts.dim);
  if (opts.kind == "torus") return SpaceDescriptor::torus(opts.dim);
  if (opts.distance_csv.empty())
    throw std::invalid_argument("space: finite spaces need --distance-csv");
  FiniteData data;
  data.dist = load_distance_csv(opts.distance_csv);
  if (!opts.weights_csv.empty()) {
    data.weights = load_vector_csv(opts.weights_csv);
  } else {
    data.weights.assign(data.dist.size(), 1.0 / static_cast<double>(data.dist.size()));
  }
  return SpaceDescriptor::finite(std::move(data));
}

struct CoverOptions {
  SpaceOptions space;
  double radius = 0.2;
  double epsilon = 0.0;
  double mu = 0.0;
  std::size_t samples = 10000;
  std::size_t net = 0;
  std::uint64_t seed = 0;
  std::string engine = "lazy";
  std::string out;
  std::string candidates;
};

RunConfig make_config(const CoverOptions& opts, bool epsilon_set, bool mu_set) {
  RunConfig config{make_space(opts.space), opts.radius, std::nullopt, std::nullopt,
                   opts.samples,          opts.net,    opts.seed,    engine_from_name(opts.engine),
                   std::nullopt};
  if (epsilon_set) config.epsilon = opts.epsilon;
  if (mu_set) config.mu = opts.mu;
  if (!opts.candidates.empty()) config.candidates_csv = opts.candidates;
  return config;
}

int cmd_cover(const CoverOptions& opts, bool epsilon_set, bool mu_set) {
  const RunConfig config = make_config(opts, epsilon_set, mu_set);
  const RunArtifacts artifacts = run_cover(config, opts.out);
  std::cout << "centers: " << artifacts.run.iterations()
            << "  observed covering radius: " << artifacts.verification.covering_radius_observed
            << "  covered fraction at r: " << artifacts.verification.covered_fraction_at_r
            << "  density: " << artifacts.verification.density << '\n';
  if (!artifacts.hard_invariants_ok) {
    std::cerr << "hard invariant violated";
    if (!artifacts.invariant_violation.empty())
      std::cerr << ": " << artifacts.invariant_violation;
    std::cerr << '\n';
    return 1;
  }
  return 0;
}

int cmd_verify(const std::string& run_path, std::size_t net, std::uint64_t seed,
               const std::string& out) {
  std::ifstream in(run_path);
  if (!in) throw std::runtime_error("cannot open " + run_path);
  const RunSummary summary = run_summary_from_json(nlohmann::json::parse(in));
  const std::size_t net_size = net ? net : 10 * summary.cloud_size;
  const VerificationReport report =
      verify_covering(summary.space, summary.centers, summary.cover_radius, net_size, seed);
  const nlohmann::json j = verification_to_json(report);
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    DirectoryLock lock(out);
    write_text_file(std::filesystem::path(out) / "verification.json", j.dump(2) + "\n");
  }
  std::cout << j.dump(2) << '\n';
  return report.covered_fraction_at_r > 0.0 ? 0 : 1;
}

int cmd_bounds(const SpaceOptions& space_opts, double radius, double epsilon, bool epsilon_set,
               double mu, bool mu_set) {
  const SpaceDescriptor space = make_space(space_opts);
  double eps = epsilon;
  std::optional<double> mu_opt;
  if (mu_set) mu_opt = mu;
  if (!epsilon_set) {
    if (!mu_set) throw std::invalid_argument("epsilon: give --epsilon or --mu");
    eps = radius / (mu * space.dim() + 1.0);
  }
  const BoundsReport report = bounds_report(space, radius, eps, mu_opt);
  std::cout << bounds_report_to_json(report).dump(2) << '\n';
  return 0;
}

int cmd_certificate(const CoverOptions& opts, bool epsilon_set, bool mu_set) {
  const RunConfig config = make_config(opts, epsilon_set, mu_set);
  const RunArtifacts artifacts = execute_run(config);
  const nlohmann::json j = certificate_artifact_json(artifacts);
  if (!opts.out.empty()) {
    std::filesystem::create_directories(opts.out);
    DirectoryLock lock(opts.out);
    write_text_file(std::filesystem::path(opts.out) / "certificate.json", j.dump(2) + "\n");
  }
  std::cout << j.dump(2) << '\n';
  return artifacts.hard_invariants_ok ? 0 : 1;
}

int cmd_shape_cover(const std::string& pair_path, int dim, std::size_t samples,
                    std::uint64_t seed, const std::string& engine, const std::string& out) {
  std::ifstream in(pair_path);
  if (!in) throw std::runtime_error("cannot open " + pair_path);
  ShapeRunConfig config;
  config.pair = shape_pair_from_json(nlohmann::json::parse(in));
  config.dim = dim;
  config.samples = samples;
  config.seed = seed;
  config.engine = engine_from_name(engine);
  const ShapeRunArtifacts artifacts = execute_shape_run(config);
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    DirectoryLock lock(out);
    write_text_file(std::filesystem::path(out) / "shape_run.json",
                    run_to_json(artifacts.run).dump(2) + "\n");
    write_text_file(std::filesystem::path(out) / "shape_report.json",
                    shape_report_to_json(artifacts.report).dump(2) + "\n");
  }
  std::cout << shape_report_to_json(artifacts.report).dump(2) << '\n';
  return artifacts.report.covered ? 0 : 1;
}

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const int lo = std::stoi(spec.substr(0, colon));
    const int hi = std::stoi(spec.substr(colon + 1));
    for (int n = lo; n <= hi; ++n) dims.push_back(n);
    return dims;
  }
  std::stringstream ss(spec);
  std::string field;
  while (std::getline(ss, field, ',')) dims.push_back(std::stoi(field));
  return dims;
}

int cmd_density_curve(const CoverOptions& opts, bool epsilon_set, bool mu_set,
                      const std::string& dims_spec) {
  const RunConfig base = make_config(opts, epsilon_set, mu_set);
  const std::string csv = density_curve(parse_dims(dims_spec), base);
  if (!opts.out.empty()) {
    const std::filesystem::path out(opts.out);
    std::filesystem::create_directories(out.parent_path().empty() ? "." : out.parent_path());
    write_text_file(out, csv);
  }
  std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy coverings of compact homogeneous metric spaces"};
  app.require_subcommand(1);

  CoverOptions cover_opts;
  auto* cover = app.add_subcommand("cover", "Run a greedy ball covering and write artifacts");
  add_space_options(cover, cover_opts.space);
  cover->add_option("--radius", cover_opts.radius, "Covering radius r")->required();
  auto* cover_eps = cover->add_option("--epsilon", cover_opts.epsilon, "Selection slack epsilon");
  auto* cover_mu = cover->add_option("--mu", cover_opts.mu, "Slack parameter mu (epsilon = r/(mu n + 1))");
  cover_eps->excludes(cover_mu);
  cover->add_option("--samples", cover_opts.samples, "Cloud size M");
  cover->add_option("--net", cover_opts.net, "Verification net size (default 10M)");
  cover->add_option("--seed", cover_opts.seed, "Cloud seed");
  cover->add_option("--engine", cover_opts.engine, "Greedy engine")
      ->check(CLI::IsMember({"lazy", "exhaustive"}));
  cover->add_option("--candidates", cover_opts.candidates, "Candidate centers CSV");
  cover->add_option("--out", cover_opts.out, "Output directory")->required();

  std::string verify_run;
  std::size_t verify_net = 0;
  std::uint64_t verify_seed = 12345;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Re-verify a finished run on a fresh net");
  verify->add_option("--run", verify_run, "run.json produced by cover")->required();
  verify->add_option("--net", verify_net, "Net size (default 10M)");
  verify->add_option("--seed", verify_seed, "Net seed");
  verify->add_option("--out", verify_out, "Output directory");

  SpaceOptions bounds_space;
  double bounds_radius = 0.2, bounds_eps = 0.0, bounds_mu = 0.0;
  auto* bounds = app.add_subcommand("bounds", "Print the closed-form covering bounds");
  add_space_options(bounds, bounds_space);
  bounds->add_option("--radius", bounds_radius, "Covering radius r")->required();
  auto* bounds_eps_opt = bounds->add_option("--epsilon", bounds_eps, "Selection slack epsilon");
  auto* bounds_mu_opt = bounds->add_option("--mu", bounds_mu, "Slack parameter mu");
  bounds_eps_opt->excludes(bounds_mu_opt);

  CoverOptions cert_opts;
  auto* certificate = app.add_subcommand("certificate", "Re-derive and check the dual certificate");
  add_space_options(certificate, cert_opts.space);
  certificate->add_option("--radius", cert_opts.radius, "Covering radius r")->required();
  auto* cert_eps = certificate->add_option("--epsilon", cert_opts.epsilon, "Selection slack epsilon");
  auto* cert_mu = certificate->add_option("--mu", cert_opts.mu, "Slack parameter mu");
  cert_eps->excludes(cert_mu);
  certificate->add_option("--samples", cert_opts.samples, "Cloud size M");
  certificate->add_option("--seed", cert_opts.seed, "Cloud seed");
  certificate->add_option("--engine", cert_opts.engine, "Greedy engine")
      ->check(CLI::IsMember({"lazy", "exhaustive"}));
  certificate->add_option("--out", cert_opts.out, "Output directory");

  std::string shape_pair_path, shape_out, shape_engine = "lazy";
  int shape_dim = 2;
  std::size_t shape_samples = 5000;
  std::uint64_t shape_seed = 0;
  auto* shape = app.add_subcommand("shape-cover", "Greedy covering by a union-of-balls shape pair");
  shape->add_option("--shape-pair", shape_pair_path, "JSON file with inner/outer shapes")->required();
  shape->add_option("--dim", shape_dim, "Torus dimension");
  shape->add_option("--samples", shape_samples, "Cloud size M");
  shape->add_option("--seed", shape_seed, "Cloud seed");
  shape->add_option("--engine", shape_engine, "Greedy engine")
      ->check(CLI::IsMember({"lazy", "exhaustive"}));
  shape->add_option("--out", shape_out, "Output directory");

  CoverOptions curve_opts;
  std::string curve_dims = "2:4";
  auto* curve = app.add_subcommand("density-curve", "Density vs. bound curve across dimensions");
  add_space_options(curve, curve_opts.space);
  curve->add_option("--radius", curve_opts.radius, "Covering radius r")->required();
  auto* curve_eps = curve->add_option("--epsilon", curve_opts.epsilon, "Selection slack epsilon");
  auto* curve_mu = curve->add_option("--mu", curve_opts.mu, "Slack parameter mu");
  curve_eps->excludes(curve_mu);
  curve->add_option("--samples", curve_opts.samples, "Cloud size M");
  curve->add_option("--net", curve_opts.net, "Verification net size (default 10M)");
  curve->add_option("--seed", curve_opts.seed, "Cloud seed");
  curve->add_option("--dims", curve_dims, "Dimensions, e.g. 2:5 or 2,3,4");
  curve->add_option("--engine", curve_opts.engine, "Greedy engine")
      ->check(CLI::IsMember({"lazy", "exhaustive"}));
  curve->add_option("--out", curve_opts.out, "Output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cover->parsed()) return cmd_cover(cover_opts, cover_eps->count() > 0, cover_mu->count() > 0);
    if (verify->parsed()) return cmd_verify(verify_run, verify_net, verify_seed, verify_out);
    if (bounds->parsed())
      return cmd_bounds(bounds_space, bounds_radius, bounds_eps, bounds_eps_opt->count() > 0,
                        bounds_mu, bounds_mu_opt->count() > 0);
    if (certificate->parsed())
      return cmd_certificate(cert_opts, cert_eps->count() > 0, cert_mu->count() > 0);
    if (shape->parsed())
      return cmd_shape_cover(shape_pair_path, shape_dim, shape_samples, shape_seed, shape_engine,
                             shape_out);
    if (curve->parsed())
      return cmd_density_curve(curve_opts, curve_eps->count() > 0, curve_mu->count() > 0,
                               curve_dims);
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
