#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "covering/errors.hpp"

namespace covering {

enum class SpaceKind { Sphere, Torus, Finite };

// A point of whichever space is in play: a unit vector in R^{n+1} on the
// sphere, fractional coordinates in [0,1)^n on the torus, or a bare index
// into the distance matrix on finite spaces.
struct Point {
  std::vector<double> coords;
  std::uint32_t index = 0;

  static Point at_index(std::uint32_t i) {
    Point p;
    p.index = i;
    return p;
  }
  static Point from_coords(std::vector<double> c) {
    Point p;
    p.coords = std::move(c);
    return p;
  }

  bool operator==(const Point& other) const {
    return coords == other.coords && index == other.index;
  }
};

struct FiniteData {
  std::vector<std::vector<double>> dist;  // symmetric, zero diagonal, metric
  std::vector<double> weights;            // nonnegative, sums to 1
};

// Which compact metric space we work in, with enough data to evaluate
// distances, ball measures and uniform samples.
class SpaceDescriptor {
 public:
  static SpaceDescriptor sphere(int dim);
  static SpaceDescriptor torus(int dim);
  // Validated finite space; throws ValidationError naming the offender.
  static SpaceDescriptor finite(FiniteData data);

  SpaceKind kind() const { return kind_; }
  int dim() const { return dim_; }
  // Number of coordinates a point carries (0 for finite spaces).
  std::size_t coord_count() const {
    if (kind_ == SpaceKind::Sphere) return static_cast<std::size_t>(dim_) + 1;
    if (kind_ == SpaceKind::Torus) return static_cast<std::size_t>(dim_);
    return 0;
  }
  std::size_t finite_size() const { return finite_ ? finite_->dist.size() : 0; }
  const FiniteData& finite_data() const;

  bool operator==(const SpaceDescriptor& other) const;

 private:
  SpaceDescriptor(SpaceKind kind, int dim) : kind_(kind), dim_(dim) {}

  SpaceKind kind_;
  int dim_;
  std::shared_ptr<const FiniteData> finite_;
};

// Metric of the space: arccos of the clamped dot product on the sphere,
// coordinate-wise wrap-around Euclidean distance on the torus, a matrix
// lookup on finite spaces. Throws std::invalid_argument on dimension or
// index mismatch.
double distance(const SpaceDescriptor& space, const Point& x, const Point& y);

// Measure of a closed ball of radius s under the uniform probability
// measure. Sphere: normalized integral of sin^{n-1} by adaptive Simpson
// quadrature (relative tolerance 1e-12). Torus: V_n s^n, only defined for
// s < 1/2 where the ball embeds without self-overlap. Finite spaces are
// not homogeneous; throws UnsupportedOperation.
double ball_measure(const SpaceDescriptor& space, double s);

// m i.i.d. points from the uniform measure, reproducible from the seed.
std::vector<Point> sample(const SpaceDescriptor& space, std::uint64_t seed, std::size_t m);

// Checks symmetry, zero diagonal, the triangle inequality (tolerance 1e-9)
// and the weight normalization, then wraps the data in a descriptor.
SpaceDescriptor validate_finite_space(const std::vector<std::vector<double>>& dist,
                                      const std::vector<double>& weights);

// Volume of the n-dimensional Euclidean unit ball, pi^{n/2} / Gamma(n/2+1).
double unit_ball_volume(int n);

}  // namespace covering
