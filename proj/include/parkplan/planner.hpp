#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "parkplan/cost_matrix.hpp"
#include "parkplan/errors.hpp"
#include "parkplan/hungarian.hpp"
#include "parkplan/reduction.hpp"

namespace parkplan {

struct Query {
  VehicleId vehicle;
  std::uint64_t arrival = 0;
};

/// Pending parking queries in arrival order. A batch is ready once
/// `hold_size` queries are waiting; batches are always taken from the front.
class QueryQueue {
 public:
  explicit QueryQueue(std::size_t hold_size) : hold_size_(hold_size) {
    if (hold_size == 0) throw ConfigError("queue hold size must be at least 1");
  }

  const Query& push(VehicleId vehicle) {
    pending_.push_back({vehicle, next_arrival_++});
    return pending_.back();
  }

  std::size_t hold_size() const noexcept { return hold_size_; }
  std::size_t size() const noexcept { return pending_.size(); }
  bool empty() const noexcept { return pending_.empty(); }
  bool ready() const noexcept { return pending_.size() >= hold_size_; }

  /// Removes up to `hold_size` queries from the front.
  std::vector<Query> take_batch() {
    const auto count = static_cast<std::ptrdiff_t>(std::min(hold_size_, pending_.size()));
    std::vector<Query> batch(pending_.begin(), pending_.begin() + count);
    pending_.erase(pending_.begin(), pending_.begin() + count);
    return batch;
  }

 private:
  std::size_t hold_size_;
  std::uint64_t next_arrival_ = 0;
  std::deque<Query> pending_;
};

/// Parking spaces with availability. Once taken a space never comes back.
class SpacePool {
 public:
  explicit SpacePool(std::size_t count) {
    available_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) available_.push_back(SpaceId{i});
    free_.assign(count, 1);
  }

  explicit SpacePool(std::vector<SpaceId> spaces) : available_(std::move(spaces)) {
    std::size_t max_id = 0;
    for (const SpaceId s : available_) max_id = std::max(max_id, index(s));
    free_.assign(available_.empty() ? 0 : max_id + 1, 0);
    for (const SpaceId s : available_) {
      if (free_[index(s)]) throw ConfigError("space " + std::to_string(index(s)) + " listed twice");
      free_[index(s)] = 1;
    }
  }

  std::span<const SpaceId> available() const noexcept { return available_; }
  std::size_t available_count() const noexcept { return available_.size(); }
  bool empty() const noexcept { return available_.empty(); }

  bool is_available(SpaceId s) const noexcept { return index(s) < free_.size() && free_[index(s)]; }

  /// Marks the spaces of `assignment` as taken; taking an unavailable space is an error.
  void take(const Assignment& assignment) {
    for (const Placement& p : assignment.pairs) {
      if (!is_available(p.space)) {
        throw ConsistencyError("space " + std::to_string(index(p.space)) + " is not available");
      }
      free_[index(p.space)] = 0;
    }
    std::erase_if(available_, [&](SpaceId s) { return !free_[index(s)]; });
  }

 private:
  std::vector<SpaceId> available_;  // ascending insertion order, free spaces only
  std::vector<char> free_;
};

struct BatchResult {
  Assignment assignment;
  std::vector<VehicleId> rejections;
  std::size_t candidate_count = 0;  // N' for reduced batches, N for overflow batches
  bool overflow = false;            // more queries than available spaces

  friend bool operator==(const BatchResult&, const BatchResult&) = default;
};

struct PlanOutcome {
  std::vector<BatchResult> batches;
  std::vector<VehicleId> rejections;
  double cumulative_cost = 0.0;

  std::size_t assigned_count() const noexcept {
    std::size_t n = 0;
    for (const auto& b : batches) n += b.assignment.pairs.size();
    return n;
  }

  /// Mean candidate-set size over batches that were planned through the reduction.
  double mean_candidate_count() const noexcept {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& b : batches) {
      if (b.overflow || b.assignment.pairs.empty()) continue;
      sum += static_cast<double>(b.candidate_count);
      ++n;
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
  }

  /// Mean of N'/M over reduced batches.
  double mean_candidate_ratio() const noexcept {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& b : batches) {
      if (b.overflow || b.assignment.pairs.empty()) continue;
      sum += static_cast<double>(b.candidate_count) / static_cast<double>(b.assignment.pairs.size());
      ++n;
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
  }

  friend bool operator==(const PlanOutcome&, const PlanOutcome&) = default;
};

/// Plans one batch against the current pool and removes the assigned spaces.
///
/// If the batch fits, it goes through the candidate-set reduction. Otherwise
/// the first N queries (batch order is arrival order) are matched exactly to
/// the N available spaces and the rest are rejected.
template <DistanceSource D>
BatchResult plan_batch(std::span<const VehicleId> batch, SpacePool& pool, const D& dist) {
  if (batch.empty()) throw DomainError("plan_batch needs a non-empty batch");

  BatchResult out;
  const std::size_t n = pool.available_count();
  if (n == 0) {
    out.rejections.assign(batch.begin(), batch.end());
    out.overflow = true;
    return out;
  }

  if (batch.size() <= n) {
    ReducedPlan plan = plan_reduced(batch, pool.available(), dist);
    out.assignment = std::move(plan.assignment);
    out.candidate_count = plan.candidate_count;
  } else {
    const auto served = batch.first(n);
    const auto spaces = pool.available();
    std::vector<double> data(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) data[r * n + c] = dist(served[r], spaces[c]);
    }
    const CostMatrix square(n, n, std::move(data));
    const SquareSolution sol = solve_square(square);
    for (std::size_t r = 0; r < n; ++r) {
      const double d = square(r, sol.perm[r]);
      out.assignment.pairs.push_back({served[r], spaces[sol.perm[r]], d});
      out.assignment.total_cost += d;
    }
    out.rejections.assign(batch.begin() + static_cast<std::ptrdiff_t>(n), batch.end());
    out.candidate_count = n;
    out.overflow = true;
  }
  pool.take(out.assignment);
  return out;
}

/// Feeds `arrivals` through a queue of size `hold_size`, dispatching each full
/// batch (and the final partial one) through `plan_batch`.
template <DistanceSource D>
PlanOutcome run_stream(std::span<const VehicleId> arrivals, SpacePool& pool, const D& dist, std::size_t hold_size) {
  QueryQueue queue(hold_size);
  PlanOutcome outcome;

  auto dispatch = [&] {
    std::vector<VehicleId> vehicles;
    for (const Query& q : queue.take_batch()) vehicles.push_back(q.vehicle);
    BatchResult batch = plan_batch(std::span<const VehicleId>(vehicles), pool, dist);
    outcome.cumulative_cost += batch.assignment.total_cost;
    outcome.rejections.insert(outcome.rejections.end(), batch.rejections.begin(), batch.rejections.end());
    outcome.batches.push_back(std::move(batch));
  };

  for (const VehicleId v : arrivals) {
    queue.push(v);
    if (queue.ready()) dispatch();
  }
  if (!queue.empty()) dispatch();
  return outcome;
}

/// Each vehicle, in arrival order, takes its nearest available space
/// (smallest space id on ties). Written independently of the batch pipeline.
template <DistanceSource D>
PlanOutcome greedy_baseline(std::span<const VehicleId> arrivals, SpacePool& pool, const D& dist) {
  PlanOutcome outcome;
  for (const VehicleId v : arrivals) {
    BatchResult batch;
    const auto spaces = pool.available();
    if (spaces.empty()) {
      batch.rejections.push_back(v);
      batch.overflow = true;
      outcome.rejections.push_back(v);
      outcome.batches.push_back(std::move(batch));
      continue;
    }
    SpaceId best = spaces.front();
    double best_d = dist(v, best);
    for (const SpaceId s : spaces.subspan(1)) {
      const double d = dist(v, s);
      if (d < best_d || (d == best_d && index(s) < index(best))) {
        best = s;
        best_d = d;
      }
    }
    batch.assignment.pairs.push_back({v, best, best_d});
    batch.assignment.total_cost = best_d;
    batch.candidate_count = 1;
    pool.take(batch.assignment);
    outcome.cumulative_cost += best_d;
    outcome.batches.push_back(std::move(batch));
  }
  return outcome;
}

}  // namespace parkplan
