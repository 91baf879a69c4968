#pragma once

#include <map>
#include <optional>
#include <string>

#include "covering/space.hpp"

namespace covering {

struct Theorem1Bounds {
  double lower = 0.0;  // 1 / omega_r
  double upper = 0.0;  // (1/omega_{r-eps}) (ln(omega_{r-eps}/omega_eps) + 1)
};

// Covering-number sandwich from the measure triple. Requires
// 0 < omega_eps <= omega_{r-eps} <= omega_r <= 1.
Theorem1Bounds theorem1_bounds(double omega_r, double omega_r_minus_eps, double omega_eps);

// (1 + 1/(mu-1)) (n ln(mu n) + 1), the dimension-only density bound.
double corollary_density_bound(int n, double mu);

struct OptimalMu {
  double mu = 0.0;
  double value = 0.0;
  double value_at_log_n = 0.0;  // the standard mu = ln n choice
};

// Golden-section minimum of the density bound over mu in (1, n].
OptimalMu optimal_mu(int n);

struct BwRatioReport {
  double ratio = 0.0;  // omega_{tr} / omega_r
  double bound = 0.0;  // t^n
  double slack = 0.0;  // bound - ratio
  bool satisfied = false;
};

// Ball-measure growth check: the sphere ratio must stay below t^n, the
// torus ratio must equal it.
BwRatioReport bw_ratio_check(const SpaceDescriptor& space, double r, double t);

struct NaszodiBounds {
  double original = 0.0;  // (v_K / v_{K-d})   * (ln(v_{K-d/2} / v_ball) + 1)
  double improved = 0.0;  // (v_K / v_{K-d/2}) * (ln(v_{K-d/2} / v_ball) + 1)
  bool degenerate = false;  // inner body has vanished; original diverges
};

// Density bounds for coverings by translates of a body K, from the
// volumes of K, its inner parallel bodies and the half-delta ball.
NaszodiBounds naszodi_bound(double vol_k, double vol_k_minus_delta,
                            double vol_k_minus_half_delta, double vol_ball_half_delta);

struct BoundsReport {
  double lower = 0.0;
  double upper = 0.0;
  double corollary_value = 0.0;  // NaN when mu <= 1
  double mu = 0.0;
  double t = 0.0;        // r / (r - eps)
  double t_prime = 0.0;  // (r - eps) / eps
  std::map<std::string, double> details;
};

// Evaluates every closed-form bound for the given space, radius and
// epsilon (mu overrides the derived value when provided).
BoundsReport bounds_report(const SpaceDescriptor& space, double r, double epsilon,
                           std::optional<double> mu = std::nullopt);

}  // namespace covering
