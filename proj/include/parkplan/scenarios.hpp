#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parkplan/cost_matrix.hpp"
#include "parkplan/errors.hpp"

namespace parkplan {

/// Seeded generator with a platform-independent stream.
///
/// `std::mt19937_64` output is fixed by the standard; the standard
/// distributions are not, so floating-point draws are derived from the raw
/// 64-bit words here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Planar Euclidean distance.
inline double distance(Point a, Point b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

enum class ScenarioKind { uniform, clustered, adversarial };

inline std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::uniform: return "uniform";
    case ScenarioKind::clustered: return "clustered";
    case ScenarioKind::adversarial: return "adversarial";
  }
  return "unknown";
}

inline ScenarioKind parse_kind(std::string_view text) {
  if (text == "uniform") return ScenarioKind::uniform;
  if (text == "clustered") return ScenarioKind::clustered;
  if (text == "adversarial") return ScenarioKind::adversarial;
  throw ConfigError("unknown scenario kind '" + std::string(text) + "'");
}

inline constexpr std::size_t kDefaultLotSize = 300;
inline constexpr double kDefaultWorldExtent = 10000.0;
inline constexpr std::size_t kAdversarialMaxSize = 12;

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::clustered;
  std::size_t n_vehicles = 0;
  std::size_t n_spaces = 1;
  std::size_t lot_size = kDefaultLotSize;
  double world_extent = kDefaultWorldExtent;
  std::uint64_t seed = 0;

  /// Number of lots in the clustered family; the last one may be partial.
  std::size_t lot_count() const noexcept { return (n_spaces + lot_size - 1) / lot_size; }

  /// Jitter radius of spaces around their lot centre.
  double lot_radius() const noexcept { return world_extent / 200.0; }

  /// Side of the square in which a clustered scenario's vehicles start.
  double district_side() const noexcept { return world_extent / 50.0; }

  void validate() const {
    if (n_spaces == 0) throw ConfigError("n_spaces must be at least 1");
    if (lot_size == 0) throw ConfigError("lot_size must be at least 1");
    if (!(world_extent > 0.0) || !std::isfinite(world_extent)) {
      throw ConfigError("world_extent must be positive and finite");
    }
    if (kind == ScenarioKind::adversarial) {
      if (n_spaces > kAdversarialMaxSize) {
        throw ConfigError("adversarial scenarios support at most " + std::to_string(kAdversarialMaxSize) +
                          " spaces");
      }
      if (n_vehicles != n_spaces) throw ConfigError("adversarial scenarios need n_vehicles == n_spaces");
    }
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Distance source over generated coordinates; rows are computed on demand.
class CoordinateDistance {
 public:
  CoordinateDistance(std::span<const Point> vehicles, std::span<const Point> spaces) noexcept
      : vehicles_(vehicles), spaces_(spaces) {}

  double operator()(VehicleId v, SpaceId s) const noexcept {
    return distance(vehicles_[index(v)], spaces_[index(s)]);
  }

 private:
  std::span<const Point> vehicles_;
  std::span<const Point> spaces_;
};

/// A realised scenario: either coordinates or an explicit matrix.
/// Vehicles arrive in id order.
struct Scenario {
  ScenarioConfig config;
  std::vector<Point> vehicles;
  std::vector<Point> spaces;
  std::optional<CostMatrix> matrix;

  std::size_t vehicle_count() const noexcept { return matrix ? matrix->rows() : vehicles.size(); }
  std::size_t space_count() const noexcept { return matrix ? matrix->cols() : spaces.size(); }

  std::vector<VehicleId> arrivals() const {
    std::vector<VehicleId> out(vehicle_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = VehicleId{i};
    return out;
  }

  /// Calls `f` with the scenario's concrete distance source.
  template <class F>
  decltype(auto) visit_distance(F&& f) const {
    if (matrix) return std::forward<F>(f)(MatrixDistance(*matrix));
    return std::forward<F>(f)(CoordinateDistance(vehicles, spaces));
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Row i holds the i-th powers of 1..n (1-based), so the first row is
/// increasing and later rows grow steeply. Greedy planning does badly here.
inline CostMatrix adversarial_matrix(std::size_t n) {
  if (n < 1 || n > kAdversarialMaxSize) {
    throw DimensionError("adversarial_matrix supports 1 <= n <= " + std::to_string(kAdversarialMaxSize) +
                         ", got " + std::to_string(n));
  }
  std::vector<double> data(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t value = 1;
      for (std::size_t k = 0; k <= i; ++k) value *= j + 1;
      data[i * n + j] = static_cast<double>(value);
    }
  }
  return CostMatrix(n, n, std::move(data));
}

namespace detail {

inline Point uniform_point(Rng& rng, double lo, double hi) {
  const double x = rng.uniform(lo, hi);
  const double y = rng.uniform(lo, hi);
  return {x, y};
}

// Uniform in the disk of `radius` around `center`, by rejection from the square.
inline Point jitter_in_disk(Rng& rng, Point center, double radius) {
  for (;;) {
    const double dx = rng.uniform(-radius, radius);
    const double dy = rng.uniform(-radius, radius);
    if (dx * dx + dy * dy <= radius * radius) return {center.x + dx, center.y + dy};
  }
}

}  // namespace detail

/// Realises a scenario. Identical configs give bit-identical scenarios.
///
/// - uniform: spaces, then vehicles, i.i.d. uniform over the world square.
/// - clustered: lot centres uniform over the world; each lot's spaces
///   uniform in a disk of `lot_radius()`; vehicles uniform in a square of
///   `district_side()` around a uniformly drawn district centre.
/// - adversarial: `adversarial_matrix(n_spaces)`, no coordinates.
inline Scenario generate(const ScenarioConfig& config) {
  config.validate();
  Scenario out;
  out.config = config;
  Rng rng(config.seed);

  switch (config.kind) {
    case ScenarioKind::uniform: {
      out.spaces.reserve(config.n_spaces);
      for (std::size_t j = 0; j < config.n_spaces; ++j) {
        out.spaces.push_back(detail::uniform_point(rng, 0.0, config.world_extent));
      }
      out.vehicles.reserve(config.n_vehicles);
      for (std::size_t i = 0; i < config.n_vehicles; ++i) {
        out.vehicles.push_back(detail::uniform_point(rng, 0.0, config.world_extent));
      }
      break;
    }
    case ScenarioKind::clustered: {
      std::vector<Point> lots;
      lots.reserve(config.lot_count());
      for (std::size_t l = 0; l < config.lot_count(); ++l) {
        lots.push_back(detail::uniform_point(rng, 0.0, config.world_extent));
      }
      out.spaces.reserve(config.n_spaces);
      for (std::size_t j = 0; j < config.n_spaces; ++j) {
        out.spaces.push_back(detail::jitter_in_disk(rng, lots[j / config.lot_size], config.lot_radius()));
      }
      const Point district = detail::uniform_point(rng, 0.0, config.world_extent);
      const double half = config.district_side() / 2.0;
      out.vehicles.reserve(config.n_vehicles);
      for (std::size_t i = 0; i < config.n_vehicles; ++i) {
        const double x = rng.uniform(district.x - half, district.x + half);
        const double y = rng.uniform(district.y - half, district.y + half);
        out.vehicles.push_back({x, y});
      }
      break;
    }
    case ScenarioKind::adversarial:
      out.matrix = adversarial_matrix(config.n_spaces);
      break;
  }
  return out;
}

/// Relative excess of an approximate total cost over the exact optimum.
///
/// The two costs are sums taken in different orders, so a shortfall of a few
/// ulps is reported as zero waste; anything larger means a solver bug.
inline double waste(double approx_cost, double exact_cost) {
  constexpr double kSummationSlack = 1e-12;
  if (!(exact_cost > 0.0)) throw DomainError("waste needs a positive exact cost");
  if (approx_cost < exact_cost * (1.0 - kSummationSlack)) {
    throw ConsistencyError("approximate cost " + std::to_string(approx_cost) + " is below the exact optimum " +
                           std::to_string(exact_cost));
  }
  return std::max(0.0, (approx_cost - exact_cost) / exact_cost);
}

/// N'/M: candidate-set size relative to the number of vehicles in the batch.
inline double subset_ratio(std::size_t subset_size, std::size_t m) {
  if (m == 0) throw DomainError("subset_ratio needs m >= 1");
  return static_cast<double>(subset_size) / static_cast<double>(m);
}

}  // namespace parkplan
