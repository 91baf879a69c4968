#pragma once

#include <vector>

#include "covering/greedy.hpp"

namespace covering {

// Finite union of equal-radius balls around fixed torus offsets; the
// whole shape is rigidly translated during covering. Must fit inside a
// half-period so membership is unambiguous.
struct UnionOfBalls {
  std::vector<std::vector<double>> offsets;
  double radius = 0.0;

  void validate(int dim) const;  // throws std::invalid_argument
};

// Selection body (inner) and covering body (outer), generalizing the
// (r - eps, r) ball pair. The inner translate must stay inside the outer
// translate; validate_shape_pair spot-checks that by sampling.
struct ShapePair {
  UnionOfBalls inner;
  UnionOfBalls outer;
};

// True iff x lies in the shape translated by `translate` (torus only).
bool shape_membership(const SpaceDescriptor& space, const UnionOfBalls& shape,
                      const Point& translate, const Point& x);

class ShapeOracle final : public MembershipOracle {
 public:
  ShapeOracle(const EmpiricalMeasure& cloud, const ShapePair& pair);
  IndexSet select_members(const Point& translate) const override;
  IndexSet cover_members(const Point& translate) const override;

 private:
  IndexSet members(const UnionOfBalls& shape, const Point& translate) const;

  const EmpiricalMeasure* cloud_;
  ShapePair pair_;
};

// greedy_cover with ball membership replaced by shape membership; with a
// single zero offset this reproduces greedy_cover exactly.
CoveringRun greedy_shape_cover(const EmpiricalMeasure& cloud, std::vector<Point> candidates,
                               const ShapePair& pair, Engine engine = Engine::Lazy);

// Samples `samples` points of random inner translates and reports whether
// every one of them lies in the matching outer translate.
bool validate_shape_pair(const SpaceDescriptor& space, const ShapePair& pair,
                         std::size_t samples, std::uint64_t seed);

// Mean empirical mass of the shape across seeded random translates.
double empirical_shape_volume(const EmpiricalMeasure& cloud, const UnionOfBalls& shape,
                              std::size_t translates, std::uint64_t seed);

}  // namespace covering
