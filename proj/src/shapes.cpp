#include "covering/shapes.hpp"

#include <algorithm>
#include <cmath>

#include "covering/rng.hpp"

namespace covering {

namespace {

double wrap01(double a) { return a - std::floor(a); }

Point translated(const Point& translate, const std::vector<double>& offset) {
  Point p;
  p.coords.resize(offset.size());
  for (std::size_t k = 0; k < offset.size(); ++k)
    p.coords[k] = wrap01(translate.coords[k] + offset[k]);
  return p;
}

}  // namespace

void UnionOfBalls::validate(int dim) const {
  if (offsets.empty()) throw std::invalid_argument("shape: offsets must be nonempty");
  if (!(radius > 0.0)) throw std::invalid_argument("shape: radius must be positive");
  double max_coord = 0.0;
  for (const auto& o : offsets) {
    if (o.size() != static_cast<std::size_t>(dim))
      throw std::invalid_argument("shape: offset dimension mismatch");
    for (double c : o) max_coord = std::max(max_coord, std::abs(c));
  }
  if (!(radius + max_coord < 0.5))
    throw std::invalid_argument("shape: must fit in a half-period (radius + max offset < 1/2)");
}

bool shape_membership(const SpaceDescriptor& space, const UnionOfBalls& shape,
                      const Point& translate, const Point& x) {
  if (space.kind() != SpaceKind::Torus)
    throw UnsupportedOperation("shape_membership: torus spaces only");
  shape.validate(space.dim());
  for (const auto& offset : shape.offsets)
    if (distance(space, translated(translate, offset), x) <= shape.radius) return true;
  return false;
}

ShapeOracle::ShapeOracle(const EmpiricalMeasure& cloud, const ShapePair& pair)
    : cloud_(&cloud), pair_(pair) {
  if (cloud.space().kind() != SpaceKind::Torus)
    throw UnsupportedOperation("shape covering: torus spaces only");
  pair_.inner.validate(cloud.space().dim());
  pair_.outer.validate(cloud.space().dim());
}

IndexSet ShapeOracle::members(const UnionOfBalls& shape, const Point& translate) const {
  IndexSet out;
  for (const auto& offset : shape.offsets) {
    const IndexSet part = cloud_->ball_indices(translated(translate, offset), shape.radius);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IndexSet ShapeOracle::select_members(const Point& translate) const {
  return members(pair_.inner, translate);
}

IndexSet ShapeOracle::cover_members(const Point& translate) const {
  return members(pair_.outer, translate);
}

CoveringRun greedy_shape_cover(const EmpiricalMeasure& cloud, std::vector<Point> candidates,
                               const ShapePair& pair, Engine engine) {
  const ShapeOracle oracle(cloud, pair);
  CoveringRun run = run_greedy(cloud, std::move(candidates), oracle, engine);
  run.select_radius = pair.inner.radius;
  run.cover_radius = pair.outer.radius;
  run.epsilon = pair.outer.radius - pair.inner.radius;
  run.body = "shape";
  return run;
}

bool validate_shape_pair(const SpaceDescriptor& space, const ShapePair& pair,
                         std::size_t samples, std::uint64_t seed) {
  if (space.kind() != SpaceKind::Torus)
    throw UnsupportedOperation("validate_shape_pair: torus spaces only");
  if (samples == 0) throw std::invalid_argument("validate_shape_pair: samples must be >= 1");
  pair.inner.validate(space.dim());
  pair.outer.validate(space.dim());

  const std::size_t dim = space.coord_count();
  const CounterRng rng(seed);
  const CounterRng translate_rng = rng.split(0);
  const CounterRng pick_rng = rng.split(1);
  const CounterRng dir_rng = rng.split(2);
  const CounterRng radius_rng = rng.split(3);

  for (std::size_t j = 0; j < samples; ++j) {
    Point translate;
    translate.coords.resize(dim);
    for (std::size_t k = 0; k < dim; ++k)
      translate.coords[k] = translate_rng.uniform(j * dim + k);

    const std::size_t pick = std::min<std::size_t>(
        static_cast<std::size_t>(pick_rng.uniform(j) * pair.inner.offsets.size()),
        pair.inner.offsets.size() - 1);

    std::vector<double> dir(dim);
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      dir[k] = dir_rng.normal(j * dim + k);
      norm_sq += dir[k] * dir[k];
    }
    const double scale =
        norm_sq > 0.0 ? pair.inner.radius *
                            std::pow(radius_rng.uniform(j), 1.0 / static_cast<double>(dim)) /
                            std::sqrt(norm_sq)
                      : 0.0;

    Point x;
    x.coords.resize(dim);
    for (std::size_t k = 0; k < dim; ++k)
      x.coords[k] = wrap01(translate.coords[k] + pair.inner.offsets[pick][k] + scale * dir[k]);

    if (!shape_membership(space, pair.outer, translate, x)) return false;
  }
  return true;
}

double empirical_shape_volume(const EmpiricalMeasure& cloud, const UnionOfBalls& shape,
                              std::size_t translates, std::uint64_t seed) {
  if (translates == 0) throw std::invalid_argument("empirical_shape_volume: need translates >= 1");
  shape.validate(cloud.space().dim());
  const std::size_t dim = cloud.space().coord_count();
  const CounterRng rng(seed);
  ShapePair degenerate{shape, shape};
  const ShapeOracle oracle(cloud, degenerate);
  long double total = 0.0L;
  for (std::size_t j = 0; j < translates; ++j) {
    Point t;
    t.coords.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) t.coords[k] = rng.uniform(j * dim + k);
    total += cloud.mass(oracle.select_members(t));
  }
  return static_cast<double>(total / translates);
}

}  // namespace covering
