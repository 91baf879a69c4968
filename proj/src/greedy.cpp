#include "covering/greedy.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "covering/parallel.hpp"

namespace covering {

namespace {

struct Gain {
  double mass = 0.0;
  std::uint64_t count = 0;
};

struct GreedyState {
  const EmpiricalMeasure& cloud;
  const std::vector<Point>& candidates;
  const MembershipOracle& oracle;
  std::vector<char> covered_select;
  std::vector<char> covered_cover;
  std::size_t uncovered;

  GreedyState(const EmpiricalMeasure& c, const std::vector<Point>& cand,
              const MembershipOracle& o)
      : cloud(c),
        candidates(cand),
        oracle(o),
        covered_select(c.size(), 0),
        covered_cover(c.size(), 0),
        uncovered(c.size()) {}

  Gain gain_of(std::uint32_t c) const {
    const IndexSet members = oracle.select_members(candidates[c]);
    Gain g;
    if (cloud.uniform_weights()) {
      for (std::uint32_t i : members)
        if (!covered_select[i]) ++g.count;
      g.mass = cloud.mass_of_count(g.count);
    } else {
      for (std::uint32_t i : members)
        if (!covered_select[i]) {
          ++g.count;
          g.mass += cloud.point_weight(i);
        }
    }
    return g;
  }

  // Uniform clouds compare exact uncovered counts; weighted clouds compare
  // mass. Ties break to the lowest candidate index.
  bool beats(const Gain& a, std::uint32_t ia, const Gain& b, std::uint32_t ib) const {
    if (cloud.uniform_weights()) {
      if (a.count != b.count) return a.count > b.count;
    } else {
      if (a.mass != b.mass) return a.mass > b.mass;
    }
    return ia < ib;
  }

  bool is_zero(const Gain& g) const {
    return cloud.uniform_weights() ? g.count == 0 : !(g.mass > 0.0);
  }

  void commit(std::uint32_t c, CoveringRun& run, bool flagged_zero) {
    const IndexSet select_mem = oracle.select_members(candidates[c]);
    IndexSet region;
    double mass = 0.0;
    if (!flagged_zero) {
      for (std::uint32_t i : select_mem)
        if (!covered_select[i]) region.push_back(i);
      mass = cloud.uniform_weights() ? cloud.mass_of_count(region.size())
                                     : cloud.mass(region);
    }
    for (std::uint32_t i : select_mem) covered_select[i] = 1;
    const IndexSet cover_mem = oracle.cover_members(candidates[c]);
    for (std::uint32_t i : cover_mem)
      if (!covered_cover[i]) {
        covered_cover[i] = 1;
        --uncovered;
      }
    if (flagged_zero)
      run.zero_gain_iterations.push_back(static_cast<std::uint32_t>(run.chosen.size()));
    run.chosen.push_back(c);
    run.centers.push_back(candidates[c]);
    run.gains.push_back(mass);
    run.regions.push_back(std::move(region));
    run.uncovered_after.push_back(uncovered);
  }

  std::uint32_t first_uncovered() const {
    for (std::uint32_t i = 0; i < covered_cover.size(); ++i)
      if (!covered_cover[i]) return i;
    return 0;
  }

  // Once every gain is zero it stays zero (coverage only grows), so the
  // rest of the run is pure reach-based selection.
  void fallback_loop(CoveringRun& run) {
    while (uncovered > 0) {
      bool found = false;
      for (std::uint32_t c = 0; c < candidates.size() && !found; ++c) {
        const IndexSet mem = oracle.cover_members(candidates[c]);
        for (std::uint32_t i : mem)
          if (!covered_cover[i]) {
            commit(c, run, /*flagged_zero=*/true);
            found = true;
            break;
          }
      }
      if (!found) {
        std::ostringstream msg;
        msg << "no candidate reaches uncovered cloud point " << first_uncovered()
            << " within the covering body";
        throw InfeasibleDiscretization(msg.str());
      }
    }
  }
};

void run_exhaustive(GreedyState& state, CoveringRun& run) {
  const std::size_t n = state.candidates.size();
  struct Best {
    Gain gain;
    std::uint32_t index = 0;
    bool valid = false;
  };
  while (state.uncovered > 0) {
    std::vector<Best> best_by_chunk(64);
    parallel_chunks(n, 64, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
      Best local;
      for (std::size_t c = begin; c < end; ++c) {
        const Gain g = state.gain_of(static_cast<std::uint32_t>(c));
        if (!local.valid || state.beats(g, static_cast<std::uint32_t>(c), local.gain, local.index)) {
          local = {g, static_cast<std::uint32_t>(c), true};
        }
      }
      best_by_chunk[chunk] = local;
    });
    Best best;
    for (const Best& b : best_by_chunk) {
      if (!b.valid) continue;
      if (!best.valid || state.beats(b.gain, b.index, best.gain, best.index)) best = b;
    }
    if (state.is_zero(best.gain)) {
      state.fallback_loop(run);
      return;
    }
    state.commit(best.index, run, /*flagged_zero=*/false);
  }
}

void run_lazy(GreedyState& state, CoveringRun& run) {
  const std::size_t n = state.candidates.size();
  struct Entry {
    Gain gain;
    std::uint32_t index;
    std::uint64_t epoch;
  };
  struct Worse {
    const GreedyState* state;
    bool operator()(const Entry& a, const Entry& b) const {
      // priority_queue pops the largest element; "a < b" means a is worse.
      return state->beats(b.gain, b.index, a.gain, a.index);
    }
  };

  std::vector<Entry> initial(n);
  parallel_chunks(n, 64, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t c = begin; c < end; ++c)
      initial[c] = {state.gain_of(static_cast<std::uint32_t>(c)),
                    static_cast<std::uint32_t>(c), 0};
  });
  std::priority_queue<Entry, std::vector<Entry>, Worse> heap(Worse{&state}, std::move(initial));

  std::uint64_t epoch = 0;
  while (state.uncovered > 0) {
    if (heap.empty()) {
      state.fallback_loop(run);
      return;
    }
    Entry top = heap.top();
    heap.pop();
    if (top.epoch != epoch) {
      // Stale cached gains only overestimate; refresh and reinsert.
      top.gain = state.gain_of(top.index);
      top.epoch = epoch;
      heap.push(top);
      continue;
    }
    if (state.is_zero(top.gain)) {
      state.fallback_loop(run);
      return;
    }
    state.commit(top.index, run, /*flagged_zero=*/false);
    ++epoch;
  }
}

}  // namespace

std::string engine_name(Engine e) { return e == Engine::Lazy ? "lazy" : "exhaustive"; }

Engine engine_from_name(const std::string& name) {
  if (name == "lazy") return Engine::Lazy;
  if (name == "exhaustive") return Engine::Exhaustive;
  throw std::invalid_argument("unknown engine '" + name + "'");
}

CoveringRun run_greedy(const EmpiricalMeasure& cloud, std::vector<Point> candidates,
                       const MembershipOracle& oracle, Engine engine) {
  if (candidates.empty()) throw std::invalid_argument("run_greedy: no candidates");
  CoveringRun run(cloud.space());
  run.cloud_seed = cloud.seed();
  run.cloud_size = cloud.size();
  run.engine = engine_name(engine);
  run.candidates = std::move(candidates);

  GreedyState state(cloud, run.candidates, oracle);
  if (engine == Engine::Exhaustive)
    run_exhaustive(state, run);
  else
    run_lazy(state, run);
  return run;
}

CoveringRun greedy_cover(const EmpiricalMeasure& cloud, std::vector<Point> candidates,
                         double select_radius, double cover_radius, Engine engine) {
  if (!(select_radius > 0.0) || !(select_radius < cover_radius))
    throw std::invalid_argument("greedy_cover: need 0 < select_radius < cover_radius");
  const BallOracle oracle(cloud, select_radius, cover_radius);
  CoveringRun run = run_greedy(cloud, std::move(candidates), oracle, engine);
  run.select_radius = select_radius;
  run.cover_radius = cover_radius;
  run.epsilon = cover_radius - select_radius;
  run.body = "ball";
  return run;
}

std::string run_invariant_violation(const CoveringRun& run, const EmpiricalMeasure& cloud,
                                    const MembershipOracle& oracle) {
  std::vector<char> seen(cloud.size(), 0);
  long double gain_sum = 0.0L;
  double prev_gain = 2.0;
  std::size_t zg = 0;
  for (std::size_t i = 0; i < run.iterations(); ++i) {
    const bool flagged = zg < run.zero_gain_iterations.size() &&
                         run.zero_gain_iterations[zg] == i;
    if (flagged) ++zg;
    if (!is_sorted_unique(run.regions[i]) && !run.regions[i].empty())
      return "region not sorted/unique at iteration " + std::to_string(i);
    for (std::uint32_t p : run.regions[i]) {
      if (seen[p]) return "regions overlap at point " + std::to_string(p);
      seen[p] = 1;
    }
    gain_sum += run.gains[i];
    if (!flagged) {
      if (!(run.gains[i] > 0.0)) return "nonpositive gain at iteration " + std::to_string(i);
      if (run.gains[i] > prev_gain + 1e-15)
        return "gain increased at iteration " + std::to_string(i);
      prev_gain = run.gains[i];
    }
  }
  if (gain_sum > 1.0L + 1e-9L) return "gain mass exceeds 1";
  // Covering postcondition.
  std::vector<char> covered(cloud.size(), 0);
  for (const Point& y : run.centers)
    for (std::uint32_t p : oracle.cover_members(y)) covered[p] = 1;
  for (std::uint32_t p = 0; p < covered.size(); ++p)
    if (!covered[p]) return "cloud point " + std::to_string(p) + " left uncovered";
  return {};
}

}  // namespace covering
