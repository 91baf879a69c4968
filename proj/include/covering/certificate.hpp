#pragma once

#include <vector>

#include "covering/greedy.hpp"

namespace covering {

// The dual function g of the covering run, stored region by region:
// weight 1/gain_i over the i-th selected region, zero elsewhere.
// Fallback iterations carry weight 0 over an empty region and are flagged.
struct CertificateEntry {
  IndexSet region;
  double weight = 0.0;
  bool flagged = false;
};

struct DualCertificate {
  std::vector<CertificateEntry> entries;
  double select_radius = 0.0;
  double epsilon = 0.0;
};

DualCertificate build_certificate(const CoveringRun& run);

// Riemann-chain diagnostics at the max-load point: the last iteration b
// whose residual selection-ball mass still dominates the eps-ball mass.
struct BSplit {
  std::size_t b = 0;
  double omega_b = 0.0;
  double omega_eps = 0.0;
};

struct CertificateReport {
  double total_mass = 0.0;
  std::size_t num_centers = 0;
  std::size_t flagged_count = 0;

  double max_load = 0.0;
  std::uint32_t max_load_point = 0;
  std::size_t max_ball_count = 0;  // k = largest selection-ball point count
  double harmonic_bound = 0.0;     // H_k

  double paper_bound = 0.0;  // ln(max omega_{r-eps} / min omega_eps) + 1
  double omega_select_max = 0.0;
  double omega_select_min = 0.0;
  double omega_eps_min = 0.0;
  double omega_eps_max = 0.0;

  BSplit b_split;

  bool total_mass_ok = false;   // total mass == unflagged center count (1e-9)
  bool load_bound_ok = false;   // max load <= H_k + 1e-9 (required)
  bool paper_bound_holds = false;  // max load <= paper bound + 1e-9 (reported)
  std::vector<std::uint32_t> flagged_iterations;
};

// Evaluates g against the cloud: total mass, per-point ball loads
// L(y) = sum_i weight_i * mass(region_i within B(y, select_radius)),
// the rigorous harmonic bound and the homogeneity-surrogate paper bound.
// Throws std::invalid_argument unless 0 < epsilon < select_radius.
CertificateReport check_certificate(const DualCertificate& cert, const EmpiricalMeasure& cloud,
                                    double epsilon);

struct TerminationReport {
  bool applicable = false;  // candidates cover the cloud point set
  std::size_t iterations = 0;
  double min_eps_ball_mass = 0.0;
  double bound = 0.0;  // 1 / min eps-ball mass
  double gains_sum = 0.0;
  bool pass = false;
};

// Checks iterations <= 1 / min_y mass(B(y, eps)) and sum of gains <= 1.
// Reported as not applicable when the candidate set does not contain
// every cloud point.
TerminationReport termination_bound_check(const CoveringRun& run, const EmpiricalMeasure& cloud,
                                          double epsilon);

// H_k = 1 + 1/2 + ... + 1/k.
double harmonic_number(std::size_t k);

}  // namespace covering
