#pragma once

#include <string>
#include <vector>

#include "covering/cloud.hpp"

namespace covering {

enum class Engine { Lazy, Exhaustive };

std::string engine_name(Engine e);
Engine engine_from_name(const std::string& name);

// Sorted cloud-point members of the selection/covering body placed at a
// candidate point. Ball bodies and union-of-ball bodies share the greedy
// engine through this interface.
class MembershipOracle {
 public:
  virtual ~MembershipOracle() = default;
  virtual IndexSet select_members(const Point& candidate) const = 0;
  virtual IndexSet cover_members(const Point& candidate) const = 0;
};

// The classic pair: select within r-eps, cover within r.
class BallOracle final : public MembershipOracle {
 public:
  BallOracle(const EmpiricalMeasure& cloud, double select_radius, double cover_radius)
      : cloud_(&cloud), select_radius_(select_radius), cover_radius_(cover_radius) {}
  IndexSet select_members(const Point& c) const override {
    return cloud_->ball_indices(c, select_radius_);
  }
  IndexSet cover_members(const Point& c) const override {
    return cloud_->ball_indices(c, cover_radius_);
  }

 private:
  const EmpiricalMeasure* cloud_;
  double select_radius_;
  double cover_radius_;
};

// Full record of one greedy covering run: the chosen centers in order,
// the per-iteration gains (empirical mass of the newly selected region),
// the pairwise-disjoint regions themselves, and the uncovered count after
// each iteration. Zero-gain iterations (reach-only fallback picks) are
// listed in zero_gain_iterations; they sit outside the dual analysis.
struct CoveringRun {
  explicit CoveringRun(SpaceDescriptor s) : space(std::move(s)) {}

  SpaceDescriptor space;
  std::uint64_t cloud_seed = 0;
  std::size_t cloud_size = 0;
  double select_radius = 0.0;
  double cover_radius = 0.0;
  double epsilon = 0.0;
  std::string body = "ball";  // "ball" or "shape"
  std::string engine;

  std::vector<Point> candidates;
  std::vector<std::uint32_t> chosen;  // candidate indices in selection order
  std::vector<Point> centers;
  std::vector<double> gains;
  std::vector<IndexSet> regions;
  std::vector<std::size_t> uncovered_after;
  std::vector<std::uint32_t> zero_gain_iterations;

  std::size_t iterations() const { return chosen.size(); }
};

// One iteration: pick the candidate whose selection body holds the most
// still-unselected mass (ties to the lowest candidate index); stop once
// every cloud point lies in some chosen covering body. When every gain is
// zero but points remain uncovered, fall back to the lowest-index
// candidate whose covering body reaches an uncovered point, or throw
// InfeasibleDiscretization if none does. Lazy and exhaustive engines
// return identical runs.
CoveringRun run_greedy(const EmpiricalMeasure& cloud, std::vector<Point> candidates,
                       const MembershipOracle& oracle, Engine engine);

CoveringRun greedy_cover(const EmpiricalMeasure& cloud, std::vector<Point> candidates,
                         double select_radius, double cover_radius,
                         Engine engine = Engine::Lazy);

// Structural invariants of a finished run: disjoint regions, positive
// nonincreasing gains outside fallback iterations, total gain mass <= 1,
// and the covering postcondition. Returns a description of the first
// violation, empty if clean.
std::string run_invariant_violation(const CoveringRun& run, const EmpiricalMeasure& cloud,
                                    const MembershipOracle& oracle);

}  // namespace covering
