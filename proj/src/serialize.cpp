#include "covering/serialize.hpp"

#include "covering/io.hpp"

namespace covering {

namespace {

nlohmann::json points_to_json(const SpaceDescriptor& space, const std::vector<Point>& points) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Point& p : points) arr.push_back(point_to_json(space, p));
  return arr;
}

}  // namespace

nlohmann::json run_to_json(const CoveringRun& run) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["space"] = space_to_json(run.space);
  j["params"]["body"] = run.body;
  j["params"]["engine"] = run.engine;
  j["params"]["select_radius"] = run.select_radius;
  j["params"]["cover_radius"] = run.cover_radius;
  j["params"]["epsilon"] = run.epsilon;
  j["params"]["seed"] = run.cloud_seed;
  j["params"]["samples"] = run.cloud_size;
  j["centers"] = points_to_json(run.space, run.centers);
  j["center_indices"] = run.chosen;
  j["gains"] = run.gains;
  j["iterations"] = run.iterations();
  j["uncovered_after"] = run.uncovered_after;
  j["zero_gain_iterations"] = run.zero_gain_iterations;
  return j;
}

RunSummary run_summary_from_json(const nlohmann::json& j) {
  RunSummary s{space_from_json(j.at("space")), "", "", 0, 0, 0, 0, 0, {}};
  const auto& params = j.at("params");
  s.body = params.at("body").get<std::string>();
  s.engine = params.at("engine").get<std::string>();
  s.select_radius = params.at("select_radius").get<double>();
  s.cover_radius = params.at("cover_radius").get<double>();
  s.epsilon = params.at("epsilon").get<double>();
  s.cloud_seed = params.at("seed").get<std::uint64_t>();
  s.cloud_size = params.at("samples").get<std::size_t>();
  for (const auto& p : j.at("centers")) s.centers.push_back(point_from_json(s.space, p));
  return s;
}

nlohmann::json certificate_artifact_json(const RunArtifacts& artifacts) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  if (artifacts.certificate_report) {
    const CertificateReport& r = *artifacts.certificate_report;
    j["paper_form"] = "ok";
    j["total_mass"] = r.total_mass;
    j["num_centers"] = r.num_centers;
    j["flagged_count"] = r.flagged_count;
    j["max_load"] = r.max_load;
    j["max_load_point"] = r.max_load_point;
    j["max_ball_count"] = r.max_ball_count;
    j["harmonic_bound"] = r.harmonic_bound;
    j["paper_bound"] = r.paper_bound;
    j["omega_select_max"] = r.omega_select_max;
    j["omega_select_min"] = r.omega_select_min;
    j["omega_eps_min"] = r.omega_eps_min;
    j["omega_eps_max"] = r.omega_eps_max;
    j["b_split"]["b"] = r.b_split.b;
    j["b_split"]["omega_b"] = r.b_split.omega_b;
    j["b_split"]["omega_eps"] = r.b_split.omega_eps;
    j["total_mass_ok"] = r.total_mass_ok;
    j["load_bound_ok"] = r.load_bound_ok;
    j["paper_bound_holds"] = r.paper_bound_holds;
    j["flagged_iterations"] = r.flagged_iterations;
  } else {
    j["paper_form"] = "skipped";
    j["skip_reason"] = artifacts.certificate_skip_reason;
  }
  j["termination"]["applicable"] = artifacts.termination.applicable;
  j["termination"]["iterations"] = artifacts.termination.iterations;
  j["termination"]["min_eps_ball_mass"] = artifacts.termination.min_eps_ball_mass;
  j["termination"]["bound"] = artifacts.termination.bound;
  j["termination"]["gains_sum"] = artifacts.termination.gains_sum;
  j["termination"]["pass"] = artifacts.termination.pass;
  return j;
}

nlohmann::json verification_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["radius"] = report.radius;
  j["net_size"] = report.net_size;
  j["net_seed"] = report.net_seed;
  j["num_centers"] = report.num_centers;
  j["covering_radius_observed"] = report.covering_radius_observed;
  j["covered_fraction_at_r"] = report.covered_fraction_at_r;
  j["density"] = report.density;
  j["bound_comparisons"]["lower"] = report.lower;
  j["bound_comparisons"]["theorem1_upper"] = report.theorem1_upper;
  j["bound_comparisons"]["corollary"] = report.corollary;
  j["slack"] = report.slack;
  j["slack_lower_bound"] = report.slack_lower_bound;
  j["lower_check_applicable"] = report.lower_check_applicable;
  j["lower_check_pass"] = report.lower_check_pass;
  j["radius_capped"] = report.radius_capped;
  return j;
}

nlohmann::json bounds_report_to_json(const BoundsReport& report) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["lower"] = report.lower;
  j["upper"] = report.upper;
  j["corollary_value"] = report.corollary_value;
  j["mu"] = report.mu;
  j["t"] = report.t;
  j["t_prime"] = report.t_prime;
  j["details"] = report.details;
  return j;
}

nlohmann::json shape_report_to_json(const ShapeCoverReport& report) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["pair_valid"] = report.pair_valid;
  j["num_centers"] = report.num_centers;
  j["outer_volume"] = report.outer_volume;
  j["inner_volume"] = report.inner_volume;
  j["half_ball_volume"] = report.half_ball_volume;
  j["density"] = report.density;
  j["naszodi_original"] = report.bounds.original;
  j["naszodi_improved"] = report.bounds.improved;
  j["naszodi_degenerate"] = report.bounds.degenerate;
  j["covered"] = report.covered;
  j["density_within_bound"] = report.density_within_bound;
  return j;
}

nlohmann::json shape_to_json(const UnionOfBalls& shape) {
  nlohmann::json j;
  j["offsets"] = shape.offsets;
  j["radius"] = shape.radius;
  return j;
}

UnionOfBalls shape_from_json(const nlohmann::json& j) {
  UnionOfBalls shape;
  shape.offsets = j.at("offsets").get<std::vector<std::vector<double>>>();
  shape.radius = j.at("radius").get<double>();
  return shape;
}

nlohmann::json shape_pair_to_json(const ShapePair& pair) {
  nlohmann::json j;
  j["inner"] = shape_to_json(pair.inner);
  j["outer"] = shape_to_json(pair.outer);
  return j;
}

ShapePair shape_pair_from_json(const nlohmann::json& j) {
  return ShapePair{shape_from_json(j.at("inner")), shape_from_json(j.at("outer"))};
}

std::string run_core_bytes(const CoveringRun& run) {
  nlohmann::json j;
  j["centers"] = points_to_json(run.space, run.centers);
  j["chosen"] = run.chosen;
  j["gains"] = run.gains;
  j["regions"] = run.regions;
  j["uncovered_after"] = run.uncovered_after;
  j["zero_gain_iterations"] = run.zero_gain_iterations;
  return j.dump();
}

}  // namespace covering
