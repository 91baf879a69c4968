#include "covering/bounds.hpp"

#include <cmath>
#include <limits>

namespace covering {

namespace {

constexpr double kPi = 3.14159265358979323846;

long double corollary_ld(int n, long double mu) {
  return (1.0L + 1.0L / (mu - 1.0L)) *
         (static_cast<long double>(n) * std::log(mu * static_cast<long double>(n)) + 1.0L);
}

double pow_int(double base, int k) {
  double r = 1.0;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

}  // namespace

Theorem1Bounds theorem1_bounds(double omega_r, double omega_r_minus_eps, double omega_eps) {
  if (!(omega_eps > 0.0) || !(omega_eps <= omega_r_minus_eps) ||
      !(omega_r_minus_eps <= omega_r) || !(omega_r <= 1.0))
    throw std::invalid_argument(
        "theorem1_bounds: need 0 < omega_eps <= omega_{r-eps} <= omega_r <= 1");
  const long double om_r = omega_r;
  const long double om_rme = omega_r_minus_eps;
  const long double om_eps = omega_eps;
  Theorem1Bounds b;
  b.lower = static_cast<double>(1.0L / om_r);
  b.upper = static_cast<double>((1.0L / om_rme) * (std::log(om_rme / om_eps) + 1.0L));
  return b;
}

double corollary_density_bound(int n, double mu) {
  if (n < 1) throw std::domain_error("corollary_density_bound: n must be >= 1");
  if (!(mu > 1.0)) throw std::domain_error("corollary_density_bound: mu must exceed 1");
  return static_cast<double>(corollary_ld(n, mu));
}

OptimalMu optimal_mu(int n) {
  if (n < 3) throw std::domain_error("optimal_mu: n must be >= 3 so that ln n > 1");
  const double lo_edge = 1.0 + 1e-9;
  const double hi_edge = static_cast<double>(n);
  const auto f = [n](double mu) { return static_cast<double>(corollary_ld(n, mu)); };

  // Bracket sanity: the bound blows up at 1+ and the minimum cannot beat
  // the best grid sample by much; confirm the edges do not dominate.
  double best_mu = hi_edge;
  double best_val = f(hi_edge);
  for (int i = 1; i < 256; ++i) {
    const double mu = lo_edge + (hi_edge - lo_edge) * i / 256.0;
    const double v = f(mu);
    if (v < best_val) {
      best_val = v;
      best_mu = mu;
    }
  }
  double a = std::max(lo_edge, best_mu - (hi_edge - lo_edge) / 256.0);
  double b = std::min(hi_edge, best_mu + (hi_edge - lo_edge) / 256.0);

  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-8) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  OptimalMu result;
  result.mu = 0.5 * (a + b);
  result.value = f(result.mu);
  result.value_at_log_n = f(std::log(static_cast<double>(n)));
  return result;
}

BwRatioReport bw_ratio_check(const SpaceDescriptor& space, double r, double t) {
  if (!(t > 1.0)) throw std::domain_error("bw_ratio_check: t must exceed 1");
  if (!(r > 0.0)) throw std::domain_error("bw_ratio_check: r must be positive");
  const double tr = t * r;
  if (space.kind() == SpaceKind::Sphere) {
    if (!(tr < 0.5 * kPi)) throw std::domain_error("bw_ratio_check: need t*r < pi/2 on the sphere");
  } else if (space.kind() == SpaceKind::Torus) {
    if (!(tr < 0.5)) throw std::domain_error("bw_ratio_check: need t*r < 1/2 on the torus");
  } else {
    throw UnsupportedOperation("bw_ratio_check: finite spaces unsupported");
  }
  BwRatioReport report;
  report.ratio = ball_measure(space, tr) / ball_measure(space, r);
  report.bound = pow_int(t, space.dim());
  report.slack = report.bound - report.ratio;
  if (space.kind() == SpaceKind::Sphere) {
    report.satisfied = report.ratio <= report.bound + 1e-9 * std::max(1.0, report.bound);
  } else {
    report.satisfied = std::abs(report.ratio - report.bound) <= 1e-12 * report.bound;
  }
  return report;
}

NaszodiBounds naszodi_bound(double vol_k, double vol_k_minus_delta,
                            double vol_k_minus_half_delta, double vol_ball_half_delta) {
  if (!(vol_ball_half_delta > 0.0) || !(vol_ball_half_delta <= vol_k_minus_half_delta))
    throw std::invalid_argument("naszodi_bound: need 0 < vol_ball <= vol_{K-delta/2}");
  if (vol_k_minus_delta < 0.0 || !(vol_k_minus_delta <= vol_k_minus_half_delta) ||
      !(vol_k_minus_half_delta <= vol_k))
    throw std::invalid_argument(
        "naszodi_bound: need 0 <= vol_{K-delta} <= vol_{K-delta/2} <= vol_K");
  const long double log_term =
      std::log(static_cast<long double>(vol_k_minus_half_delta) / vol_ball_half_delta) + 1.0L;
  NaszodiBounds b;
  b.degenerate = !(vol_k_minus_delta > 0.0);
  b.original = b.degenerate
                   ? std::numeric_limits<double>::infinity()
                   : static_cast<double>(static_cast<long double>(vol_k) / vol_k_minus_delta *
                                         log_term);
  b.improved = static_cast<double>(static_cast<long double>(vol_k) / vol_k_minus_half_delta *
                                   log_term);
  return b;
}

BoundsReport bounds_report(const SpaceDescriptor& space, double r, double epsilon,
                           std::optional<double> mu) {
  if (!(epsilon > 0.0) || !(epsilon < r))
    throw std::invalid_argument("bounds_report: need 0 < epsilon < r");
  const double omega_r = ball_measure(space, r);
  const double omega_rme = ball_measure(space, r - epsilon);
  const double omega_eps = ball_measure(space, epsilon);
  const Theorem1Bounds t1 = theorem1_bounds(omega_r, omega_rme, omega_eps);

  BoundsReport report;
  report.lower = t1.lower;
  report.upper = t1.upper;
  report.t = r / (r - epsilon);
  report.t_prime = (r - epsilon) / epsilon;
  report.mu = mu ? *mu : (r / epsilon - 1.0) / static_cast<double>(space.dim());
  report.corollary_value = report.mu > 1.0
                               ? corollary_density_bound(space.dim(), report.mu)
                               : std::numeric_limits<double>::quiet_NaN();
  report.details["omega_r"] = omega_r;
  report.details["omega_r_minus_eps"] = omega_rme;
  report.details["omega_eps"] = omega_eps;
  report.details["radius"] = r;
  report.details["epsilon"] = epsilon;
  report.details["dim"] = static_cast<double>(space.dim());
  return report;
}

}  // namespace covering
