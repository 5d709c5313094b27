#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "parkplan/hungarian.hpp"
#include "parkplan/io.hpp"
#include "parkplan/planner.hpp"
#include "parkplan/scenarios.hpp"

namespace parkplan {

/// Work bound (rows^2 * cols) above which the exact reference solve is refused.
inline constexpr double kExactWorkLimit = 2e10;

inline bool exact_feasible(std::size_t vehicles, std::size_t spaces) noexcept {
  return vehicles >= 1 && vehicles <= spaces &&
         static_cast<double>(vehicles) * static_cast<double>(vehicles) * static_cast<double>(spaces) <=
             kExactWorkLimit;
}

/// Minimum total distance for serving every vehicle of the scenario at once.
inline double exact_cost(const Scenario& s) {
  if (!exact_feasible(s.vehicle_count(), s.space_count())) {
    throw CapacityError("exact solve of " + std::to_string(s.vehicle_count()) + " vehicles x " +
                        std::to_string(s.space_count()) + " spaces is outside the size guard");
  }
  if (s.matrix) return exact_rectangular(*s.matrix).total_cost;
  std::vector<double> data(s.vehicle_count() * s.space_count());
  for (std::size_t i = 0; i < s.vehicle_count(); ++i) {
    for (std::size_t j = 0; j < s.space_count(); ++j) {
      data[i * s.space_count() + j] = distance(s.vehicles[i], s.spaces[j]);
    }
  }
  return exact_rectangular(CostMatrix(s.vehicle_count(), s.space_count(), std::move(data))).total_cost;
}

struct PlanRun {
  RunRecord record;
  PlanOutcome outcome;
};

/// Plans the whole scenario with batches of `m` (or greedily) and fills a
/// RunRecord. Wall time covers the planning call only.
inline PlanRun run_plan(const Scenario& s, std::size_t m, bool with_exact = false, bool greedy = false) {
  const auto arrivals = s.arrivals();
  SpacePool pool(s.space_count());

  const auto start = std::chrono::steady_clock::now();
  PlanOutcome outcome = s.visit_distance([&](const auto& dist) {
    return greedy ? greedy_baseline(std::span<const VehicleId>(arrivals), pool, dist)
                  : run_stream(std::span<const VehicleId>(arrivals), pool, dist, m);
  });
  const auto stop = std::chrono::steady_clock::now();

  RunRecord r;
  r.config = s.config;
  r.m = greedy ? 1 : m;
  r.batches = outcome.batches.size();
  r.assigned = outcome.assigned_count();
  r.rejected = outcome.rejections.size();
  r.cumulative_cost = outcome.cumulative_cost;
  r.mean_subset_size = outcome.mean_candidate_count();
  r.subset_ratio = outcome.mean_candidate_ratio();
  r.wall_time = std::chrono::duration<double>(stop - start).count();
  if (with_exact) {
    const double exact = exact_cost(s);
    r.exact_cost = exact;
    r.waste = exact > 0.0 ? waste(r.cumulative_cost, exact) : 0.0;
  }
  return {std::move(r), std::move(outcome)};
}

/// Per-vehicle guidance lines for a finished plan.
inline void write_guidance(std::ostream& out, const PlanOutcome& outcome) {
  for (const BatchResult& b : outcome.batches) {
    for (const Placement& p : b.assignment.pairs) {
      out << "assign " << index(p.vehicle) << ' ' << index(p.space) << ' ' << format_number(p.distance) << '\n';
    }
    for (const VehicleId v : b.rejections) out << "reject " << index(v) << " no more available parking spaces\n";
  }
}

enum class BenchSuite { waste, runtime, subset };

inline BenchSuite parse_suite(std::string_view text) {
  if (text == "waste") return BenchSuite::waste;
  if (text == "runtime") return BenchSuite::runtime;
  if (text == "subset") return BenchSuite::subset;
  throw ConfigError("unknown bench suite '" + std::string(text) + "'");
}

inline std::string_view to_string(BenchSuite s) noexcept {
  switch (s) {
    case BenchSuite::waste: return "waste";
    case BenchSuite::runtime: return "runtime";
    case BenchSuite::subset: return "subset";
  }
  return "unknown";
}

/// A sweep over batch sizes, each aggregated over `seeds` consecutive seeds
/// starting at `base.seed`. For the runtime suite every run is a single batch
/// (n_vehicles = m); the other suites stream `base.n_vehicles` vehicles.
struct BenchConfig {
  BenchSuite suite = BenchSuite::waste;
  ScenarioConfig base;
  std::vector<std::size_t> m_values;
  std::size_t seeds = 30;
  std::size_t threads = 1;
};

struct BenchRow {
  BenchSuite suite = BenchSuite::waste;
  ScenarioConfig config;  // seed = first seed of the aggregate
  std::size_t seeds = 0;
  std::size_t m = 1;
  double mean_cost = 0.0;
  std::optional<double> mean_exact_cost;
  std::optional<double> mean_waste;
  std::size_t exact_runs = 0;
  double mean_subset_size = 0.0;
  double mean_subset_ratio = 0.0;
  double mean_wall_time = 0.0;
};

inline constexpr std::string_view kBenchHeader =
    "suite,kind,n_vehicles,n_spaces,lot_size,world_extent,seed_first,seeds,m,mean_cost,mean_exact_cost,"
    "mean_waste,exact_runs,mean_subset_size,mean_subset_ratio,mean_wall_time_s";

inline void write_bench_row(std::ostream& out, const BenchRow& r) {
  const ScenarioConfig& c = r.config;
  out << to_string(r.suite) << ',' << to_string(c.kind) << ',' << c.n_vehicles << ',' << c.n_spaces << ','
      << c.lot_size << ',' << format_number(c.world_extent) << ',' << c.seed << ',' << r.seeds << ',' << r.m << ','
      << format_number(r.mean_cost) << ',' << (r.mean_exact_cost ? format_number(*r.mean_exact_cost) : "") << ','
      << (r.mean_waste ? format_number(*r.mean_waste) : "") << ',' << r.exact_runs << ','
      << format_number(r.mean_subset_size) << ',' << format_number(r.mean_subset_ratio) << ','
      << format_number(r.mean_wall_time) << '\n';
}

/// Bench worker count: PARKPLAN_THREADS if set, else the hardware concurrency.
inline std::size_t bench_threads_from_env() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PARKPLAN_THREADS")) {
    const std::string_view text(env);
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || v == 0) {
      throw ConfigError(std::string("PARKPLAN_THREADS must be a positive integer, got '") + env + "'");
    }
    n = v;
  }
  return n;
}

namespace detail {

// Runs `cell(i)` for i in [0, count) on up to `threads` workers.
template <class Cell>
void for_each_cell(std::size_t count, std::size_t threads, const Cell& cell) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) cell(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          cell(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Runs a sweep and returns one aggregate row per m, in the order given.
///
/// Waste rows whose exact solve is outside the size guard carry no exact
/// cost or waste; the sweep continues. Runtime cells run on one thread so
/// timings are not disturbed by each other.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.m_values.empty()) throw ConfigError("bench needs at least one m value");
  if (cfg.seeds == 0) throw ConfigError("bench needs at least one seed");
  for (const std::size_t m : cfg.m_values) {
    if (m == 0) throw ConfigError("m values must be at least 1");
  }

  const std::size_t n_m = cfg.m_values.size();
  auto config_for = [&](std::size_t m_index, std::size_t seed_index) {
    ScenarioConfig c = cfg.base;
    c.seed = cfg.base.seed + seed_index;
    if (cfg.suite == BenchSuite::runtime) c.n_vehicles = cfg.m_values[m_index];
    return c;
  };

  // Exact optima depend only on the scenario, so the waste suite solves each seed once.
  std::vector<std::optional<double>> exact(cfg.seeds);
  const bool want_exact = cfg.suite == BenchSuite::waste;
  const bool exact_ok = want_exact && exact_feasible(cfg.base.n_vehicles, cfg.base.n_spaces);
  const std::size_t threads = cfg.suite == BenchSuite::runtime ? 1 : std::max<std::size_t>(cfg.threads, 1);
  if (exact_ok) {
    detail::for_each_cell(cfg.seeds, threads, [&](std::size_t k) {
      const Scenario s = generate(config_for(0, k));
      if (s.vehicle_count() > 0) exact[k] = exact_cost(s);
    });
  }

  std::vector<RunRecord> cells(n_m * cfg.seeds);
  detail::for_each_cell(cells.size(), threads, [&](std::size_t i) {
    const std::size_t mi = i / cfg.seeds;
    const std::size_t k = i % cfg.seeds;
    const Scenario s = generate(config_for(mi, k));
    RunRecord r = run_plan(s, cfg.m_values[mi]).record;
    if (exact[k] && *exact[k] > 0.0) {
      r.exact_cost = exact[k];
      r.waste = waste(r.cumulative_cost, *exact[k]);
    }
    cells[i] = std::move(r);
  });

  std::vector<BenchRow> rows;
  for (std::size_t mi = 0; mi < n_m; ++mi) {
    BenchRow row;
    row.suite = cfg.suite;
    row.config = config_for(mi, 0);
    row.seeds = cfg.seeds;
    row.m = cfg.m_values[mi];
    double exact_sum = 0.0;
    double waste_sum = 0.0;
    for (std::size_t k = 0; k < cfg.seeds; ++k) {
      const RunRecord& r = cells[mi * cfg.seeds + k];
      row.mean_cost += r.cumulative_cost;
      row.mean_subset_size += r.mean_subset_size;
      row.mean_subset_ratio += r.subset_ratio;
      row.mean_wall_time += r.wall_time;
      if (r.waste) {
        exact_sum += *r.exact_cost;
        waste_sum += *r.waste;
        ++row.exact_runs;
      }
    }
    const double k = static_cast<double>(cfg.seeds);
    row.mean_cost /= k;
    row.mean_subset_size /= k;
    row.mean_subset_ratio /= k;
    row.mean_wall_time /= k;
    if (row.exact_runs == cfg.seeds) {
      row.mean_exact_cost = exact_sum / k;
      row.mean_waste = waste_sum / k;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace parkplan
