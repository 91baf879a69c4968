#pragma once

#include <nlohmann/json.hpp>

#include "covering/pipeline.hpp"

namespace covering {

nlohmann::json run_to_json(const CoveringRun& run);
// Restores the parts of a run needed to re-verify or re-derive it
// (space, parameters, centers); regions are rebuilt by re-running.
struct RunSummary {
  SpaceDescriptor space;
  std::string body;
  std::string engine;
  double select_radius = 0.0;
  double cover_radius = 0.0;
  double epsilon = 0.0;
  std::uint64_t cloud_seed = 0;
  std::size_t cloud_size = 0;
  std::vector<Point> centers;
};
RunSummary run_summary_from_json(const nlohmann::json& j);

nlohmann::json certificate_artifact_json(const RunArtifacts& artifacts);
nlohmann::json verification_to_json(const VerificationReport& report);
nlohmann::json bounds_report_to_json(const BoundsReport& report);
nlohmann::json shape_report_to_json(const ShapeCoverReport& report);

nlohmann::json shape_to_json(const UnionOfBalls& shape);
UnionOfBalls shape_from_json(const nlohmann::json& j);
nlohmann::json shape_pair_to_json(const ShapePair& pair);
ShapePair shape_pair_from_json(const nlohmann::json& j);

// Canonical bytes of the run core (centers, order, gains, regions,
// uncovered counts) for run-identity comparisons across engines/bodies.
std::string run_core_bytes(const CoveringRun& run);

}  // namespace covering
