#pragma once

#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "parkplan/cost_matrix.hpp"
#include "parkplan/errors.hpp"
#include "parkplan/hungarian.hpp"

namespace parkplan {

/// The `m` nearest spaces among `available`, ascending by (distance, space id).
///
/// `distance_to(space)` is evaluated once per available space. A bounded
/// max-heap of size `m` keeps the selection at O(N log m).
template <class RowDistance>
std::vector<SpaceId> top_m_nearest(const RowDistance& distance_to, std::span<const SpaceId> available,
                                   std::size_t m) {
  if (m == 0) throw DomainError("top_m_nearest needs m >= 1");
  if (available.size() < m) {
    throw CapacityError("need " + std::to_string(m) + " available spaces, have " +
                        std::to_string(available.size()));
  }

  using Key = std::pair<double, std::size_t>;
  std::priority_queue<Key> worst_on_top;
  for (const SpaceId s : available) {
    const Key key{static_cast<double>(distance_to(s)), index(s)};
    if (worst_on_top.size() < m) {
      worst_on_top.push(key);
    } else if (key < worst_on_top.top()) {
      worst_on_top.pop();
      worst_on_top.push(key);
    }
  }

  std::vector<SpaceId> out(worst_on_top.size());
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    *it = SpaceId{worst_on_top.top().second};
    worst_on_top.pop();
  }
  return out;
}

/// Union of every vehicle's M nearest spaces, in first-discovery order.
struct CandidateSet {
  std::vector<SpaceId> space_ids;

  std::size_t size() const noexcept { return space_ids.size(); }
};

/// Builds the candidate set for a batch of M vehicles: each vehicle, in queue
/// order, contributes its M nearest available spaces; a hash set filters
/// spaces already collected.
template <DistanceSource D>
CandidateSet construct_subset(std::span<const VehicleId> queue, std::span<const SpaceId> available,
                              const D& dist) {
  const std::size_t m = queue.size();
  if (m == 0) throw DomainError("construct_subset needs at least one vehicle");
  if (available.size() < m) {
    throw CapacityError(std::to_string(m) + " vehicles but only " + std::to_string(available.size()) +
                        " available spaces");
  }

  CandidateSet out;
  std::unordered_set<std::size_t> seen;
  seen.reserve(std::min(available.size(), m * m));
  for (const VehicleId v : queue) {
    const auto nearest = top_m_nearest([&](SpaceId s) { return dist(v, s); }, available, m);
    for (const SpaceId s : nearest) {
      if (seen.insert(index(s)).second) out.space_ids.push_back(s);
    }
  }
  return out;
}

/// Identity of each row and column of the reduced matrix. A row without a
/// vehicle is a virtual vehicle.
struct IndexMaps {
  std::vector<std::optional<VehicleId>> vehicle_map;
  std::vector<SpaceId> space_map;
};

struct ReducedProblem {
  CostMatrix matrix;
  IndexMaps maps;
};

/// N' x N' matrix over the candidate set: rows [0, M) are the queued vehicles
/// with their original distances, rows [M, N') are zero-cost virtual vehicles.
template <DistanceSource D>
ReducedProblem construct_reduced_matrix(const CandidateSet& subset, std::span<const VehicleId> queue,
                                        const D& dist) {
  const std::size_t m = queue.size();
  const std::size_t n = subset.size();
  if (m == 0) throw ConsistencyError("reduced matrix needs at least one vehicle");
  if (n < m) {
    throw ConsistencyError("candidate set of " + std::to_string(n) + " spaces cannot serve " +
                           std::to_string(m) + " vehicles");
  }
  std::unordered_set<std::size_t> distinct;
  for (const SpaceId s : subset.space_ids) {
    if (!distinct.insert(index(s)).second) {
      throw ConsistencyError("candidate set lists space " + std::to_string(index(s)) + " twice");
    }
  }

  IndexMaps maps;
  maps.vehicle_map.assign(n, std::nullopt);
  for (std::size_t r = 0; r < m; ++r) maps.vehicle_map[r] = queue[r];
  maps.space_map = subset.space_ids;

  std::vector<double> data(n * n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) data[r * n + c] = dist(queue[r], maps.space_map[c]);
  }
  return {CostMatrix(n, n, std::move(data)), std::move(maps)};
}

/// Maps a reduced square solution back to vehicles and spaces, dropping
/// virtual rows. Costs are re-read from the original distances.
template <DistanceSource D>
Assignment extract_solution(const SquareSolution& solution, const IndexMaps& maps, const D& dist) {
  const std::size_t n = maps.vehicle_map.size();
  if (solution.perm.size() != n || maps.space_map.size() != n) {
    throw ConsistencyError("solution has " + std::to_string(solution.perm.size()) + " rows but maps cover " +
                           std::to_string(n) + " rows and " + std::to_string(maps.space_map.size()) +
                           " columns");
  }
  Assignment out;
  for (std::size_t r = 0; r < n; ++r) {
    if (!maps.vehicle_map[r]) continue;
    const std::size_t c = solution.perm[r];
    if (c >= n) throw ConsistencyError("solution column " + std::to_string(c) + " outside the space map");
    const VehicleId v = *maps.vehicle_map[r];
    const SpaceId s = maps.space_map[c];
    const double d = dist(v, s);
    out.pairs.push_back({v, s, d});
    out.total_cost += d;
  }
  return out;
}

struct ReducedPlan {
  Assignment assignment;
  std::size_t candidate_count = 0;  // N', the size of the candidate set
};

/// Candidate set -> reduced matrix -> square solve -> extraction, for a batch
/// that fits in the available spaces.
template <DistanceSource D>
ReducedPlan plan_reduced(std::span<const VehicleId> queue, std::span<const SpaceId> available, const D& dist) {
  const CandidateSet subset = construct_subset(queue, available, dist);
  const ReducedProblem reduced = construct_reduced_matrix(subset, queue, dist);
  const SquareSolution solution = solve_square(reduced.matrix);
  return {extract_solution(solution, reduced.maps, dist), subset.size()};
}

}  // namespace parkplan
