#pragma once

#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <utility>
#include <vector>

#include "covering/space.hpp"

namespace covering {

// Sorted, duplicate-free point indices into a cloud.
using IndexSet = std::vector<std::uint32_t>;

bool is_sorted_unique(const IndexSet& s);

// Hash grid over cloud points. Buckets on at most three coordinates; in
// low dimension that matches one cell per point on average, in high
// dimension the query falls back to a full scan rather than walking an
// exploding cell product. Grid pruning is conservative: the exact
// distance test always runs on the surviving candidates.
class SpatialGrid {
 public:
  SpatialGrid() = default;
  static SpatialGrid build(const SpaceDescriptor& space, const std::vector<Point>& points);

  // Appends a superset of the indices within `radius` of `center` to
  // `out` (possibly with duplicates). Returns false when cell
  // enumeration would cost more than scanning every point.
  bool query(const Point& center, double radius, std::vector<std::uint32_t>& out) const;

  bool empty() const { return buckets_.empty(); }

 private:
  std::uint64_t cell_key(const std::vector<std::uint32_t>& cell) const;

  bool sphere_ = false;
  int axes_ = 0;
  int cells_per_axis_ = 0;
  std::size_t point_count_ = 0;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

// Uniform-weight point cloud discretizing the space's probability
// measure, with grid-accelerated exact ball queries. Immutable after
// construction. Finite spaces pass their point set and weights through
// unchanged.
class EmpiricalMeasure {
 public:
  const SpaceDescriptor& space() const { return space_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::uint64_t seed() const { return seed_; }

  bool uniform_weights() const { return uniform_; }
  double point_weight(std::uint32_t i) const {
    return uniform_ ? 1.0 / static_cast<double>(points_.size()) : weights_[i];
  }
  // count/M; exact total mass of 1 at count == M.
  double mass_of_count(std::uint64_t count) const {
    return static_cast<double>(count) / static_cast<double>(points_.size());
  }
  double mass(const IndexSet& s) const;

  // Exactly the indices i with distance(space, center, p_i) <= s.
  IndexSet ball_indices(const Point& center, double s) const;

  // CSV (one point per row, full precision) plus a JSON sidecar carrying
  // the space, seed and size.
  void save(const std::filesystem::path& csv, const std::filesystem::path& sidecar) const;
  static EmpiricalMeasure load(const std::filesystem::path& csv, const std::filesystem::path& sidecar);

  friend EmpiricalMeasure build_cloud(const SpaceDescriptor& space, std::size_t m,
                                      std::uint64_t seed);

 private:
  explicit EmpiricalMeasure(SpaceDescriptor space) : space_(std::move(space)) {}

  SpaceDescriptor space_;
  std::vector<Point> points_;
  std::vector<double> weights_;  // empty when uniform
  bool uniform_ = true;
  std::uint64_t seed_ = 0;
  SpatialGrid grid_;
};

// m seeded samples with the spatial index built; finite spaces ignore m
// and return their full weighted point set.
EmpiricalMeasure build_cloud(const SpaceDescriptor& space, std::size_t m, std::uint64_t seed);

// (min, max) over centers of the empirical mass of a radius-s ball.
std::pair<double, double> empirical_ball_extremes(const EmpiricalMeasure& cloud, double s,
                                                  const std::vector<Point>& centers);

}  // namespace covering
