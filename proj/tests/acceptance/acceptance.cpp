// Acceptance suite: one PASS/FAIL line per criterion, exit status = number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "parkplan/parkplan.hpp"

namespace {

using namespace parkplan;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

std::vector<VehicleId> vehicles(std::size_t n) {
  std::vector<VehicleId> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = VehicleId{i};
  return out;
}

std::vector<SpaceId> spaces(std::size_t n) {
  std::vector<SpaceId> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = SpaceId{j};
  return out;
}

CostMatrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(0, 1000);
  std::vector<double> data(rows * cols);
  for (auto& x : data) x = entry(gen);
  return CostMatrix(rows, cols, std::move(data));
}

// Criterion: adversarial matrix costs 50069 / 23549 / 8525 / 209 for m = 1 / 2 / 3 / 6, under 1 s.
Verdict adversarial_exactness() {
  const auto start = Clock::now();
  const CostMatrix d = adversarial_matrix(6);
  const auto arrivals = vehicles(6);
  const std::pair<std::size_t, double> expected[] = {{1, 50069}, {2, 23549}, {3, 8525}, {6, 209}};
  bool ok = true;
  std::string got;
  for (const auto& [m, cost] : expected) {
    SpacePool pool(6);
    const double c = run_stream(std::span<const VehicleId>(arrivals), pool, MatrixDistance(d), m).cumulative_cost;
    ok = ok && c == cost;
    got += fmt("m=%zu:%.0f ", m, c);
  }
  const double t = seconds_since(start);
  return {ok && t < 1.0, got + fmt("(%.4f s, limit 1 s)", t)};
}

// Criterion: solver == brute force on >=200 square (n<=7) and >=100 rectangular (rows<=cols<=8), under 10 s.
Verdict oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 gen(20260101);
  int square_bad = 0, rect_bad = 0;
  const int square_draws = 210, rect_draws = 120;
  for (int k = 0; k < square_draws; ++k) {
    const std::size_t n = 1 + k % 7;
    const CostMatrix m = random_matrix(gen, n, n);
    if (solve_square(m).total_cost != brute_force_assign(m).total_cost) ++square_bad;
  }
  for (int k = 0; k < rect_draws; ++k) {
    const std::size_t cols = 1 + gen() % 8;
    const std::size_t rows = 1 + gen() % cols;
    const CostMatrix m = random_matrix(gen, rows, cols);
    if (solve_rectangular(m).total_cost != brute_force_assign(m).total_cost) ++rect_bad;
  }
  const double t = seconds_since(start);
  return {square_bad == 0 && rect_bad == 0 && t < 10.0,
          fmt("square mismatches %d/%d, rectangular mismatches %d/%d (%.3f s, limit 10 s)", square_bad, square_draws,
              rect_bad, rect_draws, t)};
}

// Criterion: plan_reduced >= full exact; equal whenever S' holds an optimal matching's columns.
Verdict reduction_sandwich() {
  std::mt19937_64 gen(777);
  const int draws = 120;
  int below = 0, contained = 0, unequal_when_contained = 0;
  for (int k = 0; k < draws; ++k) {
    const std::size_t m = 1 + gen() % 10;
    const std::size_t n = m + gen() % (501 - m);
    const CostMatrix d = random_matrix(gen, m, n);
    const MatrixDistance dist(d);
    const auto queue = vehicles(m);
    const auto available = spaces(n);

    const Assignment exact = solve_rectangular(d);
    const auto subset = construct_subset(std::span<const VehicleId>(queue), available, dist);
    const auto plan = plan_reduced(std::span<const VehicleId>(queue), available, dist);

    if (plan.assignment.total_cost < exact.total_cost) ++below;
    std::unordered_set<std::size_t> members;
    for (const SpaceId s : subset.space_ids) members.insert(index(s));
    const bool holds_optimum = std::all_of(exact.pairs.begin(), exact.pairs.end(),
                                           [&](const Placement& p) { return members.count(index(p.space)) > 0; });
    if (holds_optimum) {
      ++contained;
      if (plan.assignment.total_cost != exact.total_cost) ++unequal_when_contained;
    }
  }
  return {below == 0 && unequal_when_contained == 0,
          fmt("%d instances, below-optimum %d, S' held the optimum in %d with %d unequal", draws, below, contained,
              unequal_when_contained)};
}

BenchConfig clustered_bench(BenchSuite suite) {
  BenchConfig cfg;
  cfg.suite = suite;
  cfg.base.kind = ScenarioKind::clustered;
  cfg.base.n_vehicles = 100;
  cfg.base.n_spaces = 10000;
  cfg.base.lot_size = 300;
  cfg.base.seed = 1;
  cfg.m_values = {1, 2, 5, 10, 20};
  cfg.seeds = 30;
  cfg.threads = bench_threads_from_env();
  return cfg;
}

// Criterion: clustered N=10000, lot 300, 30 seeds: mean waste at M=20 < 0.11, non-increasing over M.
Verdict waste_claim() {
  const auto rows = run_bench(clustered_bench(BenchSuite::waste));
  std::string got;
  bool monotone = true;
  bool complete = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].mean_waste) {
      complete = false;
      continue;
    }
    got += fmt("M=%zu:%.5f ", rows[i].m, *rows[i].mean_waste);
    if (i > 0 && rows[i - 1].mean_waste && *rows[i].mean_waste > *rows[i - 1].mean_waste) monotone = false;
  }
  const bool below = complete && *rows.back().mean_waste < 0.11;
  return {complete && below && monotone,
          got + fmt("(limit 0.11 at M=20, trend %s)", monotone ? "non-increasing" : "INCREASES")};
}

// Criterion: same family, M=20: mean |S'|/M <= 3.
Verdict subset_claim() {
  auto cfg = clustered_bench(BenchSuite::subset);
  cfg.m_values = {20};
  const auto rows = run_bench(cfg);
  const double ratio = rows.at(0).mean_subset_ratio;
  return {ratio <= 3.0, fmt("mean |S'|/M = %.4f, mean |S'| = %.2f (limit 3)", ratio, rows[0].mean_subset_size)};
}

// Criterion: 50 seeded scenarios, run_stream(m=1) == greedy_baseline pair-for-pair.
Verdict greedy_equivalence() {
  int mismatches = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ScenarioConfig c;
    c.kind = seed % 2 ? ScenarioKind::uniform : ScenarioKind::clustered;
    c.n_vehicles = 200;
    c.n_spaces = 2000;
    c.seed = 1000 + seed;
    const Scenario s = generate(c);
    const auto arrivals = s.arrivals();
    SpacePool a(s.space_count()), b(s.space_count());
    const CoordinateDistance dist(s.vehicles, s.spaces);
    if (run_stream(std::span<const VehicleId>(arrivals), a, dist, 1) !=
        greedy_baseline(std::span<const VehicleId>(arrivals), b, dist)) {
      ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%d/50 scenarios differ", mismatches)};
}

// Criterion: N = 1.6M clustered, M = 100 single batch < 10 s; time(M=200) <= 4 x time(M=100).
Verdict scale_run() {
  ScenarioConfig c;
  c.kind = ScenarioKind::clustered;
  c.n_spaces = 1'600'000;
  c.lot_size = 300;
  c.seed = 2009;
  c.n_vehicles = 200;
  const Scenario full = generate(c);

  auto best_of = [&](std::size_t m, std::size_t& candidates) {
    Scenario s;
    s.config = c;
    s.config.n_vehicles = m;
    s.vehicles.assign(full.vehicles.begin(), full.vehicles.begin() + static_cast<std::ptrdiff_t>(m));
    s.spaces = full.spaces;
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto run = run_plan(s, m);
      if (run.record.assigned != m || run.record.batches != 1) return -1.0;
      candidates = static_cast<std::size_t>(run.record.mean_subset_size);
      best = std::min(best, run.record.wall_time);
    }
    return best;
  };
  std::size_t n100 = 0, n200 = 0;
  const double t100 = best_of(100, n100);
  const double t200 = best_of(200, n200);
  const bool ok = t100 >= 0.0 && t200 >= 0.0 && t100 < 10.0 && t200 <= 4.0 * t100;
  return {ok, fmt("M=100: %.3f s (|S'|=%zu), M=200: %.3f s (|S'|=%zu), ratio %.2f (limits 10 s, 4x)", t100, n100,
                  t200, n200, t200 / t100)};
}

// Criterion: 5 arrivals, 3 spaces: 3 earliest served optimally, 2 latest rejected.
Verdict fcfs_overflow() {
  const CostMatrix d{{5, 1, 9}, {3, 8, 2}, {4, 4, 4}, {0, 0, 0}, {1, 1, 1}};
  SpacePool pool(3);
  const auto arrivals = vehicles(5);
  const PlanOutcome out = run_stream(std::span<const VehicleId>(arrivals), pool, MatrixDistance(d), 5);

  const CostMatrix head{{5, 1, 9}, {3, 8, 2}, {4, 4, 4}};
  const double oracle = brute_force_assign(head).total_cost;
  bool served_earliest = out.batches.size() == 1 && out.batches[0].assignment.pairs.size() == 3;
  if (served_earliest) {
    for (std::size_t i = 0; i < 3; ++i) {
      served_earliest = served_earliest && out.batches[0].assignment.pairs[i].vehicle == VehicleId{i};
    }
  }
  const bool rejected_latest = out.rejections == std::vector<VehicleId>{VehicleId{3}, VehicleId{4}};
  const bool optimal = out.cumulative_cost == oracle;
  return {served_earliest && rejected_latest && optimal,
          fmt("served 0,1,2: %s, rejected 3,4: %s, cost %.0f vs oracle %.0f", served_earliest ? "yes" : "no",
              rejected_latest ? "yes" : "no", out.cumulative_cost, oracle)};
}

std::string dump(const PlanRun& run) {
  std::ostringstream out;
  write_guidance(out, run.outcome);
  RunRecord r = run.record;
  r.wall_time = 0.0;
  write_run_record(out, r);
  return out.str();
}

// Criterion: identical (seed, m) gives byte-identical dumps and records modulo wall time.
Verdict determinism() {
  int differing = 0, pairs = 0;
  for (const auto kind : {ScenarioKind::uniform, ScenarioKind::clustered, ScenarioKind::adversarial}) {
    for (const std::size_t m : {1, 3, 20}) {
      ScenarioConfig c;
      c.kind = kind;
      c.seed = 4242 + m;
      c.n_vehicles = kind == ScenarioKind::adversarial ? 6 : 100;
      c.n_spaces = kind == ScenarioKind::adversarial ? 6 : 5000;
      const std::string a = dump(run_plan(generate(c), m, true));
      const std::string b = dump(run_plan(generate(c), m, true));
      ++pairs;
      if (a != b) ++differing;
    }
  }
  return {differing == 0, fmt("%d/%d repeated runs differ", differing, pairs)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"adversarial exactness", adversarial_exactness},
      {"oracle equivalence", oracle_equivalence},
      {"reduction sandwich", reduction_sandwich},
      {"waste claim", waste_claim},
      {"subset clustering claim", subset_claim},
      {"greedy equivalence", greedy_equivalence},
      {"scale run", scale_run},
      {"fcfs overflow", fcfs_overflow},
      {"determinism", determinism},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
  return failures;
}
