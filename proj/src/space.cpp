#include "covering/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covering/rng.hpp"

namespace covering {

namespace {

constexpr double kPi = 3.14159265358979323846;

double ipow(double base, int k) {
  double r = 1.0;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

struct SinPow {
  int exponent;
  double operator()(double t) const { return ipow(std::sin(t), exponent); }
};

template <class F>
double adapt(F f, double a, double fa, double m, double fm, double b, double fb,
             double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(F f, double a, double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  // Coarse composite pass to scale the absolute tolerance.
  double coarse = 0.0;
  const int panels = 32;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * h;
    coarse += h / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
  }
  const double tol = std::max(std::abs(coarse) * rel_tol, 1e-300);
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adapt(f, a, fa, m, fm, b, fb, whole, tol, 48);
}

}  // namespace

SpaceDescriptor SpaceDescriptor::sphere(int dim) {
  if (dim < 1) throw std::invalid_argument("sphere: dim must be >= 1");
  return SpaceDescriptor(SpaceKind::Sphere, dim);
}

SpaceDescriptor SpaceDescriptor::torus(int dim) {
  if (dim < 1) throw std::invalid_argument("torus: dim must be >= 1");
  return SpaceDescriptor(SpaceKind::Torus, dim);
}

SpaceDescriptor SpaceDescriptor::finite(FiniteData data) {
  const auto& dist = data.dist;
  const auto& weights = data.weights;
  const std::size_t m = dist.size();
  if (m == 0) throw ValidationError("finite space: empty distance matrix");
  for (std::size_t i = 0; i < m; ++i) {
    if (dist[i].size() != m) throw ValidationError("finite space: distance matrix not square");
  }
  if (weights.size() != m) throw ValidationError("finite space: weight count != point count");

  constexpr double kTol = 1e-9;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(dist[i][i]) > kTol) {
      std::ostringstream msg;
      msg << "finite space: nonzero diagonal at (" << i << "," << i << ")";
      throw ValidationError(msg.str());
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (dist[i][j] < -kTol) {
        std::ostringstream msg;
        msg << "finite space: negative distance at (" << i << "," << j << ")";
        throw ValidationError(msg.str());
      }
      if (std::abs(dist[i][j] - dist[j][i]) > kTol) {
        std::ostringstream msg;
        msg << "finite space: asymmetric at (" << i << "," << j << ")";
        throw ValidationError(msg.str());
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (dist[i][k] > dist[i][j] + dist[j][k] + kTol) {
          std::ostringstream msg;
          msg << "finite space: triangle inequality violated for (" << i << "," << j << "," << k
              << "): d(" << i << "," << k << ")=" << dist[i][k] << " > " << dist[i][j] << " + "
              << dist[j][k];
          throw ValidationError(msg.str());
        }

  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("finite space: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kTol)
    throw ValidationError("finite space: weights do not sum to 1");

  SpaceDescriptor d(SpaceKind::Finite, static_cast<int>(m));
  d.finite_ = std::make_shared<const FiniteData>(std::move(data));
  return d;
}

const FiniteData& SpaceDescriptor::finite_data() const {
  if (!finite_) throw UnsupportedOperation("not a finite space");
  return *finite_;
}

bool SpaceDescriptor::operator==(const SpaceDescriptor& other) const {
  if (kind_ != other.kind_ || dim_ != other.dim_) return false;
  if (kind_ != SpaceKind::Finite) return true;
  return finite_->dist == other.finite_->dist && finite_->weights == other.finite_->weights;
}

double distance(const SpaceDescriptor& space, const Point& x, const Point& y) {
  switch (space.kind()) {
    case SpaceKind::Sphere: {
      const std::size_t d = space.coord_count();
      if (x.coords.size() != d || y.coords.size() != d)
        throw std::invalid_argument("distance: sphere point dimension mismatch");
      if (x.coords == y.coords) return 0.0;
      double dot = 0.0;
      for (std::size_t k = 0; k < d; ++k) dot += x.coords[k] * y.coords[k];
      dot = std::clamp(dot, -1.0, 1.0);
      return std::acos(dot);
    }
    case SpaceKind::Torus: {
      const std::size_t d = space.coord_count();
      if (x.coords.size() != d || y.coords.size() != d)
        throw std::invalid_argument("distance: torus point dimension mismatch");
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        double delta = std::abs(x.coords[k] - y.coords[k]);
        delta = std::min(delta, 1.0 - delta);
        sq += delta * delta;
      }
      return std::sqrt(sq);
    }
    case SpaceKind::Finite: {
      const FiniteData& data = space.finite_data();
      const std::size_t m = data.dist.size();
      if (x.index >= m || y.index >= m)
        throw std::invalid_argument("distance: finite point index out of range");
      return data.dist[x.index][y.index];
    }
  }
  throw std::invalid_argument("distance: unknown space kind");
}

double ball_measure(const SpaceDescriptor& space, double s) {
  switch (space.kind()) {
    case SpaceKind::Sphere: {
      if (s < 0.0 || s > kPi) throw std::domain_error("ball_measure: sphere radius outside [0, pi]");
      if (s == 0.0) return 0.0;
      const SinPow f{space.dim() - 1};
      const double num = integrate(f, 0.0, s, 1e-13);
      const double den = integrate(f, 0.0, kPi, 1e-13);
      return std::clamp(num / den, 0.0, 1.0);
    }
    case SpaceKind::Torus: {
      if (s < 0.0 || s >= 0.5) throw std::domain_error("ball_measure: torus radius outside [0, 1/2)");
      return unit_ball_volume(space.dim()) * ipow(s, space.dim());
    }
    case SpaceKind::Finite:
      throw UnsupportedOperation("ball_measure: finite spaces have center-dependent ball masses");
  }
  throw std::domain_error("ball_measure: unknown space kind");
}

std::vector<Point> sample(const SpaceDescriptor& space, std::uint64_t seed, std::size_t m) {
  if (m == 0) throw std::invalid_argument("sample: m must be >= 1");
  const CounterRng rng(seed);
  std::vector<Point> out;
  out.reserve(m);
  switch (space.kind()) {
    case SpaceKind::Sphere: {
      const std::size_t d = space.coord_count();
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> v(d);
        double norm_sq = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          v[k] = rng.normal(j * d + k);
          norm_sq += v[k] * v[k];
        }
        if (norm_sq < 1e-300) {
          v.assign(d, 0.0);
          v[0] = 1.0;
        } else {
          const double inv = 1.0 / std::sqrt(norm_sq);
          for (double& c : v) c *= inv;
        }
        out.push_back(Point::from_coords(std::move(v)));
      }
      return out;
    }
    case SpaceKind::Torus: {
      const std::size_t d = space.coord_count();
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> v(d);
        for (std::size_t k = 0; k < d; ++k) v[k] = rng.uniform(j * d + k);
        out.push_back(Point::from_coords(std::move(v)));
      }
      return out;
    }
    case SpaceKind::Finite: {
      const FiniteData& data = space.finite_data();
      std::vector<double> cum(data.weights.size());
      double acc = 0.0;
      for (std::size_t i = 0; i < cum.size(); ++i) {
        acc += data.weights[i];
        cum[i] = acc;
      }
      for (std::size_t j = 0; j < m; ++j) {
        const double u = rng.uniform(j);
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cum.begin()), cum.size() - 1);
        out.push_back(Point::at_index(static_cast<std::uint32_t>(idx)));
      }
      return out;
    }
  }
  throw std::invalid_argument("sample: unknown space kind");
}

SpaceDescriptor validate_finite_space(const std::vector<std::vector<double>>& dist,
                                      const std::vector<double>& weights) {
  return SpaceDescriptor::finite(FiniteData{dist, weights});
}

double unit_ball_volume(int n) {
  if (n < 0) throw std::domain_error("unit_ball_volume: n must be >= 0");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace covering
