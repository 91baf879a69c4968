#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covering/rng.hpp"
#include "covering/space.hpp"

using namespace covering;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Closed-form S^2 cap measure, the independent oracle for quadrature.
double cap2(double s) { return std::sin(0.5 * s) * std::sin(0.5 * s); }

SpaceDescriptor three_point_uniform() {
  std::vector<std::vector<double>> d = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  std::vector<double> w = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  return validate_finite_space(d, w);
}

Point sphere_axis(int dim, int axis) {
  std::vector<double> c(dim + 1, 0.0);
  c[axis] = 1.0;
  return Point::from_coords(std::move(c));
}

}  // namespace

TEST_CASE("torus distance wraps around") {
  const auto torus = SpaceDescriptor::torus(1);
  const Point a = Point::from_coords({0.1});
  const Point b = Point::from_coords({0.9});
  CHECK(distance(torus, a, b) == doctest::Approx(0.2).epsilon(1e-12));

  const auto torus2 = SpaceDescriptor::torus(2);
  const Point c = Point::from_coords({0.05, 0.95});
  const Point d = Point::from_coords({0.95, 0.05});
  CHECK(distance(torus2, c, d) == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
}

TEST_CASE("sphere distance is the arc angle") {
  const auto sphere = SpaceDescriptor::sphere(2);
  CHECK(distance(sphere, sphere_axis(2, 0), sphere_axis(2, 1)) ==
        doctest::Approx(kPi / 2).epsilon(1e-14));
  Point antipode = sphere_axis(2, 0);
  antipode.coords[0] = -1.0;
  CHECK(distance(sphere, sphere_axis(2, 0), antipode) == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("distance of a point to itself is zero") {
  const auto sphere = SpaceDescriptor::sphere(3);
  const auto pts = sample(sphere, 11, 5);
  for (const auto& p : pts) CHECK(distance(sphere, p, p) == 0.0);

  const auto torus = SpaceDescriptor::torus(3);
  for (const auto& p : sample(torus, 11, 5)) CHECK(distance(torus, p, p) == 0.0);

  const auto finite = three_point_uniform();
  CHECK(distance(finite, Point::at_index(1), Point::at_index(1)) == 0.0);
}

TEST_CASE("distance rejects dimension mismatches") {
  const auto sphere = SpaceDescriptor::sphere(2);
  const Point bad = Point::from_coords({1.0, 0.0});
  CHECK_THROWS_AS(distance(sphere, sphere_axis(2, 0), bad), std::invalid_argument);
  const auto finite = three_point_uniform();
  CHECK_THROWS_AS(distance(finite, Point::at_index(0), Point::at_index(7)),
                  std::invalid_argument);
}

TEST_CASE("sphere ball measure matches closed forms") {
  const auto s2 = SpaceDescriptor::sphere(2);
  CHECK(ball_measure(s2, kPi) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ball_measure(s2, kPi / 3) == doctest::Approx(0.25).epsilon(1e-11));
  CHECK(ball_measure(s2, kPi / 2) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ball_measure(s2, 0.0) == 0.0);

  // S^1 caps are linear in the radius.
  const auto s1 = SpaceDescriptor::sphere(1);
  for (double s = 0.1; s < kPi; s += 0.23)
    CHECK(ball_measure(s1, s) == doctest::Approx(s / kPi).epsilon(1e-10));

  // Spot checks in other dimensions against an external quadrature oracle.
  CHECK(ball_measure(SpaceDescriptor::sphere(3), kPi / 6) ==
        doctest::Approx(0.028834442811218654).epsilon(1e-11));
  CHECK(ball_measure(SpaceDescriptor::sphere(5), kPi / 6) ==
        doctest::Approx(0.0058624055019773189).epsilon(1e-11));
  CHECK(ball_measure(SpaceDescriptor::sphere(5), 0.5) ==
        doctest::Approx(0.0047091175277941838).epsilon(1e-11));
  CHECK(ball_measure(SpaceDescriptor::sphere(8), 0.2) ==
        doctest::Approx(3.3717007448400260e-7).epsilon(1e-10));
  CHECK(ball_measure(SpaceDescriptor::sphere(2), 1.5) ==
        doctest::Approx(0.46463139916614854).epsilon(1e-11));
}

TEST_CASE("torus ball measure is V_n s^n") {
  const auto t2 = SpaceDescriptor::torus(2);
  CHECK(ball_measure(t2, 0.25) == doctest::Approx(kPi / 16).epsilon(1e-14));
  CHECK(ball_measure(SpaceDescriptor::torus(3), 0.1) ==
        doctest::Approx(4.1887902047863910 * 1e-3).epsilon(1e-13));
  CHECK(unit_ball_volume(5) == doctest::Approx(5.2637890139143246).epsilon(1e-14));
  CHECK(unit_ball_volume(8) == doctest::Approx(4.0587121264167682).epsilon(1e-14));
}

TEST_CASE("ball measure domain errors") {
  CHECK_THROWS_AS(ball_measure(SpaceDescriptor::sphere(2), -0.1), std::domain_error);
  CHECK_THROWS_AS(ball_measure(SpaceDescriptor::sphere(2), kPi + 0.1), std::domain_error);
  CHECK_THROWS_AS(ball_measure(SpaceDescriptor::torus(2), 0.5), std::domain_error);
  CHECK_THROWS_AS(ball_measure(three_point_uniform(), 0.5), UnsupportedOperation);
}

TEST_CASE("ball measure is nondecreasing in s") {
  for (int n : {1, 2, 4, 7}) {
    const auto sphere = SpaceDescriptor::sphere(n);
    double prev = 0.0;
    for (double s = 0.0; s <= kPi; s += kPi / 64) {
      const double v = ball_measure(sphere, s);
      CHECK(v >= prev - 1e-13);
      prev = v;
    }
  }
  const auto torus = SpaceDescriptor::torus(3);
  double prev = 0.0;
  for (double s = 0.0; s < 0.5; s += 0.01) {
    const double v = ball_measure(torus, s);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("sampler determinism and ranges") {
  const auto torus = SpaceDescriptor::torus(2);
  const auto a = sample(torus, 7, 4);
  const auto b = sample(torus, 7, 4);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].coords == b[i].coords);  // bit-for-bit reproducible
    for (double c : a[i].coords) {
      CHECK(c >= 0.0);
      CHECK(c < 1.0);
    }
  }
  CHECK(sample(torus, 8, 4)[0].coords != a[0].coords);

  const auto sphere = SpaceDescriptor::sphere(3);
  for (const auto& p : sample(sphere, 3, 1000)) {
    double norm_sq = 0.0;
    for (double c : p.coords) norm_sq += c * c;
    CHECK(std::abs(std::sqrt(norm_sq) - 1.0) <= 1e-12);
  }

  CHECK_THROWS_AS(sample(torus, 1, 0), std::invalid_argument);
}

TEST_CASE("finite sampling follows the weights") {
  std::vector<std::vector<double>> d = {{0, 1}, {1, 0}};
  const auto space = validate_finite_space(d, {0.9, 0.1});
  const auto pts = sample(space, 5, 20000);
  std::size_t ones = 0;
  for (const auto& p : pts) ones += p.index;
  // 4-sigma binomial band around 2000.
  CHECK(ones > 2000 - 4 * std::sqrt(20000 * 0.1 * 0.9));
  CHECK(ones < 2000 + 4 * std::sqrt(20000 * 0.1 * 0.9));
}

TEST_CASE("monte carlo cap measure matches the closed form on S^2") {
  // Empirical measure of the cap around e1 with s = pi/3 from one million
  // samples; binomial 3-sigma is ~0.0013, the asserted band is 0.002.
  const auto sphere = SpaceDescriptor::sphere(2);
  const auto pts = sample(sphere, 1, 1000000);
  const double threshold = std::cos(kPi / 3);
  std::size_t inside = 0;
  for (const auto& p : pts)
    if (p.coords[0] >= threshold) ++inside;
  const double est = static_cast<double>(inside) / 1e6;
  CHECK(std::abs(est - 0.25) <= 0.002);
}

TEST_CASE("quadrature agrees with monte carlo across dimensions") {
  // 4-sigma binomial cross-check of the cap quadrature, one cloud per
  // dimension reused for all radii.
  const std::size_t m = 1000000;
  for (int n = 1; n <= 8; ++n) {
    const auto sphere = SpaceDescriptor::sphere(n);
    const auto pts = sample(sphere, 100 + n, m);
    for (double s : {0.2, 0.5, 1.0, 1.5}) {
      const double omega = ball_measure(sphere, s);
      const double threshold = std::cos(s);
      std::size_t inside = 0;
      for (const auto& p : pts)
        if (p.coords[0] >= threshold) ++inside;
      const double est = static_cast<double>(inside) / static_cast<double>(m);
      const double sigma = std::sqrt(omega * (1.0 - omega) / static_cast<double>(m));
      CHECK(std::abs(est - omega) <= 4.0 * sigma + 1e-12);
    }
  }
}

TEST_CASE("distance symmetry and triangle inequality on random triples") {
  const auto spaces = {SpaceDescriptor::sphere(2), SpaceDescriptor::sphere(4),
                       SpaceDescriptor::torus(2), SpaceDescriptor::torus(5)};
  for (const auto& space : spaces) {
    const auto pts = sample(space, 99, 300);
    const CounterRng rng(4242);
    for (std::size_t t = 0; t < 10000; ++t) {
      const auto i = static_cast<std::size_t>(rng.uniform(3 * t) * pts.size());
      const auto j = static_cast<std::size_t>(rng.uniform(3 * t + 1) * pts.size());
      const auto k = static_cast<std::size_t>(rng.uniform(3 * t + 2) * pts.size());
      const double dij = distance(space, pts[i], pts[j]);
      const double dji = distance(space, pts[j], pts[i]);
      const double djk = distance(space, pts[j], pts[k]);
      const double dik = distance(space, pts[i], pts[k]);
      CHECK(std::abs(dij - dji) <= 1e-9);
      CHECK(dik <= dij + djk + 1e-9);
    }
  }
}

TEST_CASE("finite space validation") {
  CHECK_NOTHROW(three_point_uniform());

  // Triangle violation, reported with the offending triple.
  std::vector<std::vector<double>> bad = {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};
  CHECK_THROWS_WITH_AS(validate_finite_space(bad, {0.5, 0.25, 0.25}),
                       doctest::Contains("triangle"), ValidationError);

  // One-point space is fine.
  CHECK_NOTHROW(validate_finite_space({{0.0}}, {1.0}));

  std::vector<std::vector<double>> asym = {{0, 1}, {2, 0}};
  CHECK_THROWS_AS(validate_finite_space(asym, {0.5, 0.5}), ValidationError);

  std::vector<std::vector<double>> ok = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(validate_finite_space(ok, {0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(validate_finite_space(ok, {1.5, -0.5}), ValidationError);
  CHECK_THROWS_AS(validate_finite_space({{0, 1}}, {1.0}), ValidationError);
}
