#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "parkplan/errors.hpp"

namespace parkplan {

enum class VehicleId : std::size_t {};
enum class SpaceId : std::size_t {};

constexpr std::size_t index(VehicleId v) noexcept { return static_cast<std::size_t>(v); }
constexpr std::size_t index(SpaceId s) noexcept { return static_cast<std::size_t>(s); }

namespace detail {

inline void check_distance(double value, std::size_t row, std::size_t col) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError("distance at (" + std::to_string(row) + ", " + std::to_string(col) +
                      ") must be finite and non-negative, got " + std::to_string(value));
  }
}

}  // namespace detail

/// Dense row-major matrix of vehicle->space distances.
///
/// Every entry is finite and non-negative; the constructor and `set` reject
/// anything else, so downstream solvers never see invalid data.
class CostMatrix {
 public:
  CostMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("cost matrix needs at least one row and one column");
    }
  }

  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("cost matrix needs at least one row and one column");
    }
    if (data_.size() != rows * cols) {
      throw DimensionError("cost matrix data has " + std::to_string(data_.size()) +
                           " entries, expected " + std::to_string(rows * cols));
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) detail::check_distance(data_[i * cols_ + j], i, j);
    }
  }

  CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : CostMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(), flatten(rows)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t row, std::size_t col) const noexcept { return data_[row * cols_ + col]; }

  double at(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_) throw DimensionError("cost matrix index out of range");
    return (*this)(row, col);
  }

  void set(std::size_t row, std::size_t col, double value) {
    if (row >= rows_ || col >= cols_) throw DimensionError("cost matrix index out of range");
    detail::check_distance(value, row, col);
    data_[row * cols_ + col] = value;
  }

  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  static std::vector<double> flatten(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<double> out;
    const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != width) throw DimensionError("ragged cost matrix literal");
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Anything that yields the distance between a vehicle and a space.
template <class D>
concept DistanceSource = requires(const D& d, VehicleId v, SpaceId s) {
  { d(v, s) } -> std::convertible_to<double>;
};

/// Distance source backed by an explicit matrix: vehicle i is row i, space j is column j.
class MatrixDistance {
 public:
  explicit MatrixDistance(const CostMatrix& matrix) noexcept : matrix_(&matrix) {}

  double operator()(VehicleId v, SpaceId s) const noexcept { return (*matrix_)(index(v), index(s)); }

  const CostMatrix& matrix() const noexcept { return *matrix_; }

 private:
  const CostMatrix* matrix_;
};

struct Placement {
  VehicleId vehicle;
  SpaceId space;
  double distance = 0.0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Vehicle->space matching. `total_cost` is the sum of `distance` over `pairs`.
struct Assignment {
  std::vector<Placement> pairs;
  double total_cost = 0.0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

}  // namespace parkplan
