#include "covering/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "covering/io.hpp"

#include <nlohmann/json.hpp>

namespace covering {

namespace {

constexpr int kMaxGridAxes = 3;

int clamp_cell(long c, int cells) {
  if (c < 0) return 0;
  if (c >= cells) return cells - 1;
  return static_cast<int>(c);
}

}  // namespace

bool is_sorted_unique(const IndexSet& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) return false;
  return true;
}

SpatialGrid SpatialGrid::build(const SpaceDescriptor& space, const std::vector<Point>& points) {
  SpatialGrid g;
  if (space.kind() == SpaceKind::Finite || points.empty()) return g;
  g.sphere_ = space.kind() == SpaceKind::Sphere;
  const int coord_dims = static_cast<int>(space.coord_count());
  g.axes_ = std::min(coord_dims, kMaxGridAxes);
  g.point_count_ = points.size();
  const double per_axis = std::pow(static_cast<double>(points.size()), 1.0 / g.axes_);
  g.cells_per_axis_ = std::max(1, static_cast<int>(std::ceil(per_axis)));

  std::vector<std::uint32_t> cell(g.axes_);
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    const auto& c = points[i].coords;
    for (int a = 0; a < g.axes_; ++a) {
      const double x = g.sphere_ ? 0.5 * (c[a] + 1.0) : c[a];  // map into [0,1]
      const double scaled = x * g.cells_per_axis_;
      cell[a] = static_cast<std::uint32_t>(clamp_cell(static_cast<long>(std::floor(scaled)),
                                                      g.cells_per_axis_));
    }
    g.buckets_[g.cell_key(cell)].push_back(i);
  }
  return g;
}

std::uint64_t SpatialGrid::cell_key(const std::vector<std::uint32_t>& cell) const {
  std::uint64_t key = 1469598103934665603ull;
  for (std::uint32_t c : cell) {
    key ^= c + 1;
    key *= 1099511628211ull;
  }
  return key;
}

bool SpatialGrid::query(const Point& center, double radius, std::vector<std::uint32_t>& out) const {
  if (buckets_.empty()) return false;
  // Conservative per-axis halfwidth: chord length on the sphere (mapped
  // coordinates are halved), plain radius on the torus.
  double halfwidth;
  if (sphere_) {
    const double s = std::min(radius, 3.14159265358979323846);
    halfwidth = 0.5 * (2.0 * std::sin(0.5 * s));
  } else {
    halfwidth = radius;
  }

  const int g = cells_per_axis_;
  struct AxisRange {
    long lo;
    long count;
    bool whole;
  };
  std::vector<AxisRange> ranges(axes_);
  double total = 1.0;
  for (int a = 0; a < axes_; ++a) {
    const double x = sphere_ ? 0.5 * (center.coords[a] + 1.0) : center.coords[a];
    // One-cell margin on both sides guards against floor() rounding on
    // knife-edge coordinates.
    const long lo = static_cast<long>(std::floor((x - halfwidth) * g)) - 1;
    const long hi = static_cast<long>(std::floor((x + halfwidth) * g)) + 1;
    AxisRange r;
    if (!sphere_ && hi - lo + 1 >= g) {
      r = {0, g, true};
    } else if (sphere_) {
      const long clo = std::max<long>(lo, 0);
      const long chi = std::min<long>(hi, g - 1);
      if (clo > chi) return true;  // box entirely outside the cube: no candidates
      r = {clo, chi - clo + 1, false};
    } else {
      r = {lo, hi - lo + 1, false};
    }
    ranges[a] = r;
    total *= static_cast<double>(r.count);
  }
  if (total > static_cast<double>(point_count_)) return false;

  std::vector<std::uint32_t> cell(axes_);
  std::vector<long> pos(axes_, 0);
  for (;;) {
    for (int a = 0; a < axes_; ++a) {
      long c = ranges[a].lo + pos[a];
      if (!sphere_) c = ((c % g) + g) % g;  // torus wrap
      cell[a] = static_cast<std::uint32_t>(c);
    }
    const auto it = buckets_.find(cell_key(cell));
    if (it != buckets_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    int a = 0;
    for (; a < axes_; ++a) {
      if (++pos[a] < ranges[a].count) break;
      pos[a] = 0;
    }
    if (a == axes_) break;
  }
  return true;
}

double EmpiricalMeasure::mass(const IndexSet& s) const {
  if (uniform_) return mass_of_count(s.size());
  double total = 0.0;
  for (std::uint32_t i : s) total += weights_[i];
  return total;
}

IndexSet EmpiricalMeasure::ball_indices(const Point& center, double s) const {
  if (s < 0.0) throw std::invalid_argument("ball_indices: negative radius");
  IndexSet out;
  if (space_.kind() == SpaceKind::Finite) {
    const auto& row = space_.finite_data().dist.at(center.index);
    for (std::uint32_t i = 0; i < row.size(); ++i)
      if (row[i] <= s) out.push_back(i);
    return out;
  }
  std::vector<std::uint32_t> cand;
  if (grid_.query(center, s, cand)) {
    for (std::uint32_t i : cand)
      if (distance(space_, center, points_[i]) <= s) out.push_back(i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    for (std::uint32_t i = 0; i < points_.size(); ++i)
      if (distance(space_, center, points_[i]) <= s) out.push_back(i);
  }
  return out;
}

EmpiricalMeasure build_cloud(const SpaceDescriptor& space, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("build_cloud: m must be >= 1");
  EmpiricalMeasure cloud(space);
  cloud.seed_ = seed;
  if (space.kind() == SpaceKind::Finite) {
    const FiniteData& data = space.finite_data();
    const std::size_t n = data.dist.size();
    cloud.points_.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) cloud.points_.push_back(Point::at_index(i));
    // All-equal weights keep the exact count/M mass arithmetic.
    bool equal = true;
    for (double w : data.weights)
      if (w != data.weights[0]) {
        equal = false;
        break;
      }
    cloud.uniform_ = equal;
    if (!equal) cloud.weights_ = data.weights;
    return cloud;
  }
  cloud.points_ = sample(space, seed, m);
  cloud.uniform_ = true;
  cloud.grid_ = SpatialGrid::build(space, cloud.points_);
  return cloud;
}

std::pair<double, double> empirical_ball_extremes(const EmpiricalMeasure& cloud, double s,
                                                  const std::vector<Point>& centers) {
  if (centers.empty()) throw std::invalid_argument("empirical_ball_extremes: no centers");
  double lo = 2.0, hi = -1.0;
  for (const Point& c : centers) {
    const double v = cloud.mass(cloud.ball_indices(c, s));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

void EmpiricalMeasure::save(const std::filesystem::path& csv,
                            const std::filesystem::path& sidecar) const {
  std::ofstream rows(csv);
  if (!rows) throw std::runtime_error("cannot open " + csv.string());
  char buf[32];
  for (const Point& p : points_) {
    if (space_.kind() == SpaceKind::Finite) {
      rows << p.index << '\n';
      continue;
    }
    for (std::size_t k = 0; k < p.coords.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", p.coords[k]);
      rows << (k ? "," : "") << buf;
    }
    rows << '\n';
  }
  rows.close();

  nlohmann::json meta;
  meta["schema"] = "greedy-cover/1";
  meta["space"] = space_to_json(space_);
  meta["seed"] = seed_;
  meta["size"] = points_.size();
  std::ofstream side(sidecar);
  if (!side) throw std::runtime_error("cannot open " + sidecar.string());
  side << meta.dump(2) << '\n';
}

EmpiricalMeasure EmpiricalMeasure::load(const std::filesystem::path& csv,
                                        const std::filesystem::path& sidecar) {
  std::ifstream side(sidecar);
  if (!side) throw std::runtime_error("cannot open " + sidecar.string());
  nlohmann::json meta = nlohmann::json::parse(side);
  const SpaceDescriptor space = space_from_json(meta.at("space"));

  EmpiricalMeasure cloud(space);
  cloud.seed_ = meta.value("seed", 0ull);

  std::ifstream rows(csv);
  if (!rows) throw std::runtime_error("cannot open " + csv.string());
  std::string line;
  while (std::getline(rows, line)) {
    if (line.empty()) continue;
    if (space.kind() == SpaceKind::Finite) {
      cloud.points_.push_back(Point::at_index(static_cast<std::uint32_t>(std::stoul(line))));
      continue;
    }
    std::vector<double> coords;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) coords.push_back(std::stod(field));
    if (coords.size() != space.coord_count())
      throw ValidationError("cloud csv: wrong coordinate count in row");
    cloud.points_.push_back(Point::from_coords(std::move(coords)));
  }
  if (cloud.points_.size() != meta.at("size").get<std::size_t>())
    throw ValidationError("cloud csv: row count differs from sidecar size");

  if (space.kind() == SpaceKind::Finite) {
    // Finite clouds are always the full point set in index order.
    for (std::uint32_t i = 0; i < cloud.points_.size(); ++i)
      if (cloud.points_[i].index != i)
        throw ValidationError("cloud csv: finite cloud must list indices 0..m-1 in order");
    if (cloud.points_.size() != space.finite_size())
      throw ValidationError("cloud csv: finite cloud size differs from space size");
    const auto& w = space.finite_data().weights;
    bool equal = true;
    for (double x : w)
      if (x != w[0]) {
        equal = false;
        break;
      }
    cloud.uniform_ = equal;
    if (!equal) cloud.weights_ = w;
  } else {
    cloud.grid_ = SpatialGrid::build(space, cloud.points_);
  }
  return cloud;
}

}  // namespace covering
