#include "covering/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <unordered_set>

#include "covering/parallel.hpp"

namespace covering {

namespace {

// region_of[p] = index of the certificate entry whose region holds p,
// or -1; regions are pairwise disjoint.
std::vector<std::int32_t> region_index_map(const DualCertificate& cert, std::size_t cloud_size) {
  std::vector<std::int32_t> map(cloud_size, -1);
  for (std::size_t e = 0; e < cert.entries.size(); ++e)
    for (std::uint32_t p : cert.entries[e].region) {
      if (map[p] != -1) throw std::invalid_argument("certificate regions overlap");
      map[p] = static_cast<std::int32_t>(e);
    }
  return map;
}

std::string point_key(const SpaceDescriptor& space, const Point& p) {
  if (space.kind() == SpaceKind::Finite)
    return std::string(reinterpret_cast<const char*>(&p.index), sizeof p.index);
  return std::string(reinterpret_cast<const char*>(p.coords.data()),
                     p.coords.size() * sizeof(double));
}

}  // namespace

double harmonic_number(std::size_t k) {
  long double h = 0.0L;
  for (std::size_t i = 1; i <= k; ++i) h += 1.0L / static_cast<long double>(i);
  return static_cast<double>(h);
}

DualCertificate build_certificate(const CoveringRun& run) {
  DualCertificate cert;
  cert.select_radius = run.select_radius;
  cert.epsilon = run.epsilon;
  cert.entries.reserve(run.iterations());
  std::size_t zg = 0;
  for (std::size_t i = 0; i < run.iterations(); ++i) {
    const bool flagged =
        zg < run.zero_gain_iterations.size() && run.zero_gain_iterations[zg] == i;
    if (flagged) ++zg;
    CertificateEntry entry;
    entry.region = run.regions[i];
    entry.flagged = flagged;
    entry.weight = flagged ? 0.0 : 1.0 / run.gains[i];
    cert.entries.push_back(std::move(entry));
  }
  return cert;
}

CertificateReport check_certificate(const DualCertificate& cert, const EmpiricalMeasure& cloud,
                                    double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < cert.select_radius))
    throw std::invalid_argument("check_certificate: need 0 < epsilon < select_radius");

  CertificateReport report;
  report.num_centers = cert.entries.size();

  long double total = 0.0L;
  for (std::size_t e = 0; e < cert.entries.size(); ++e) {
    const auto& entry = cert.entries[e];
    if (entry.flagged) {
      ++report.flagged_count;
      report.flagged_iterations.push_back(static_cast<std::uint32_t>(e));
      continue;
    }
    total += static_cast<long double>(cloud.mass(entry.region)) * entry.weight;
  }
  report.total_mass = static_cast<double>(total);

  const std::vector<std::int32_t> region_of = region_index_map(cert, cloud.size());
  const std::size_t m = cloud.size();

  // One selection-radius sweep gives loads, ball counts and the select
  // mass extremes; a second sweep at epsilon gives the eps extremes.
  struct ChunkStat {
    double max_load = -1.0;
    std::uint32_t max_load_point = 0;
    std::size_t max_count = 0;
    double select_min = 2.0, select_max = -1.0;
  };
  constexpr std::size_t kChunks = 64;
  std::vector<ChunkStat> stats(kChunks);
  parallel_chunks(m, kChunks, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    ChunkStat local;
    for (std::size_t y = begin; y < end; ++y) {
      const IndexSet ball = cloud.ball_indices(cloud.points()[y], cert.select_radius);
      double load = 0.0;
      for (std::uint32_t p : ball) {
        const std::int32_t e = region_of[p];
        if (e >= 0) load += cloud.point_weight(p) * cert.entries[e].weight;
      }
      const double ball_mass = cloud.mass(ball);
      if (load > local.max_load) {
        local.max_load = load;
        local.max_load_point = static_cast<std::uint32_t>(y);
      }
      local.max_count = std::max(local.max_count, ball.size());
      local.select_min = std::min(local.select_min, ball_mass);
      local.select_max = std::max(local.select_max, ball_mass);
    }
    stats[chunk] = local;
  });
  ChunkStat agg;
  for (const ChunkStat& s : stats) {
    if (s.max_load > agg.max_load) {
      agg.max_load = s.max_load;
      agg.max_load_point = s.max_load_point;
    }
    agg.max_count = std::max(agg.max_count, s.max_count);
    agg.select_min = std::min(agg.select_min, s.select_min);
    agg.select_max = std::max(agg.select_max, s.select_max);
  }
  report.max_load = agg.max_load;
  report.max_load_point = agg.max_load_point;
  report.max_ball_count = agg.max_count;
  report.harmonic_bound = harmonic_number(agg.max_count);
  report.omega_select_min = agg.select_min;
  report.omega_select_max = agg.select_max;

  std::vector<double> eps_chunk_min(kChunks, 2.0), eps_chunk_max(kChunks, -1.0);
  parallel_chunks(m, kChunks, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    double lo = 2.0, hi = -1.0;
    for (std::size_t y = begin; y < end; ++y) {
      const double v = cloud.mass(cloud.ball_indices(cloud.points()[y], epsilon));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    eps_chunk_min[chunk] = lo;
    eps_chunk_max[chunk] = hi;
  });
  report.omega_eps_min = *std::min_element(eps_chunk_min.begin(), eps_chunk_min.end());
  report.omega_eps_max = *std::max_element(eps_chunk_max.begin(), eps_chunk_max.end());

  report.paper_bound = report.omega_eps_min > 0.0
                           ? std::log(report.omega_select_max / report.omega_eps_min) + 1.0
                           : std::numeric_limits<double>::infinity();

  // B-split diagnostics at the max-load point.
  {
    const Point& ystar = cloud.points()[report.max_load_point];
    const IndexSet ball = cloud.ball_indices(ystar, cert.select_radius);
    const double eps_mass = cloud.mass(cloud.ball_indices(ystar, epsilon));
    std::vector<double> removed_at(cert.entries.size(), 0.0);
    double ball_mass = 0.0;
    for (std::uint32_t p : ball) {
      ball_mass += cloud.point_weight(p);
      if (region_of[p] >= 0) removed_at[region_of[p]] += cloud.point_weight(p);
    }
    double remaining = ball_mass;
    std::size_t b = 0;
    double omega_b = ball_mass;
    for (std::size_t i = 1; i <= cert.entries.size(); ++i) {
      remaining -= removed_at[i - 1];
      if (remaining >= eps_mass) {
        b = i;
        omega_b = remaining;
      }
    }
    report.b_split = {b, omega_b, eps_mass};
  }

  const double expected = static_cast<double>(report.num_centers - report.flagged_count);
  report.total_mass_ok = std::abs(report.total_mass - expected) <= 1e-9;
  report.load_bound_ok = report.max_load <= report.harmonic_bound + 1e-9;
  report.paper_bound_holds = report.max_load <= report.paper_bound + 1e-9;
  return report;
}

TerminationReport termination_bound_check(const CoveringRun& run, const EmpiricalMeasure& cloud,
                                          double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("termination_bound_check: epsilon <= 0");
  TerminationReport report;
  report.iterations = run.iterations();

  std::unordered_set<std::string> keys;
  keys.reserve(run.candidates.size() * 2);
  for (const Point& c : run.candidates) keys.insert(point_key(run.space, c));
  report.applicable = true;
  for (const Point& p : cloud.points())
    if (!keys.count(point_key(run.space, p))) {
      report.applicable = false;
      break;
    }

  constexpr std::size_t kChunks = 64;
  std::vector<double> chunk_min(kChunks, 2.0);
  parallel_chunks(cloud.size(), kChunks, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    double lo = 2.0;
    for (std::size_t y = begin; y < end; ++y)
      lo = std::min(lo, cloud.mass(cloud.ball_indices(cloud.points()[y], epsilon)));
    chunk_min[chunk] = lo;
  });
  report.min_eps_ball_mass = *std::min_element(chunk_min.begin(), chunk_min.end());
  report.bound = report.min_eps_ball_mass > 0.0
                     ? 1.0 / report.min_eps_ball_mass
                     : std::numeric_limits<double>::infinity();

  long double gains = 0.0L;
  for (double g : run.gains) gains += g;
  report.gains_sum = static_cast<double>(gains);

  report.pass = report.applicable &&
                static_cast<double>(report.iterations) <= report.bound + 1e-9 &&
                report.gains_sum <= 1.0 + 1e-9;
  return report;
}

}  // namespace covering
