#pragma once

#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "parkplan/cost_matrix.hpp"
#include "parkplan/errors.hpp"

namespace parkplan {

/// Optimal permutation of a square problem: row r is matched to column perm[r].
struct SquareSolution {
  std::vector<std::size_t> perm;
  double total_cost = 0.0;

  friend bool operator==(const SquareSolution&, const SquareSolution&) = default;
};

namespace detail {

// Shortest augmenting path with row/column potentials (Tomizawa / Jonker-Volgenant
// style). Handles rows <= cols; each row is inserted once, in index order, and
// Dijkstra over the columns finds the cheapest augmenting path in reduced costs.
// Columns are scanned in index order and only a strictly smaller reduced cost
// replaces the current minimum, so the result is deterministic.
//
// `cost(r, c)` must return a finite non-negative value. Returns row -> column.
template <class Cost>
std::vector<std::size_t> shortest_augmenting_path(std::size_t rows, std::size_t cols, const Cost& cost) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = 0;

  // 1-based; column 0 is the virtual source of each augmentation.
  std::vector<double> row_pot(rows + 1, 0.0);
  std::vector<double> col_pot(cols + 1, 0.0);
  std::vector<std::size_t> col_owner(cols + 1, kNone);
  std::vector<std::size_t> prev_col(cols + 1, 0);
  std::vector<double> min_slack(cols + 1);
  std::vector<char> visited(cols + 1);

  for (std::size_t r = 1; r <= rows; ++r) {
    col_owner[0] = r;
    std::size_t col = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(visited.begin(), visited.end(), 0);

    do {
      visited[col] = 1;
      const std::size_t owner = col_owner[col];
      double delta = kInf;
      std::size_t next = 0;
      for (std::size_t c = 1; c <= cols; ++c) {
        if (visited[c]) continue;
        const double reduced = cost(owner - 1, c - 1) - row_pot[owner] - col_pot[c];
        if (reduced < min_slack[c]) {
          min_slack[c] = reduced;
          prev_col[c] = col;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          next = c;
        }
      }
      for (std::size_t c = 0; c <= cols; ++c) {
        if (visited[c]) {
          row_pot[col_owner[c]] += delta;
          col_pot[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col = next;
    } while (col_owner[col] != kNone);

    // Flip the alternating path back to the source.
    do {
      const std::size_t back = prev_col[col];
      col_owner[col] = col_owner[back];
      col = back;
    } while (col != 0);
  }

  std::vector<std::size_t> row_to_col(rows);
  for (std::size_t c = 1; c <= cols; ++c) {
    if (col_owner[c] != kNone) row_to_col[col_owner[c] - 1] = c - 1;
  }
  return row_to_col;
}

}  // namespace detail

/// Exact minimum-cost perfect matching on a square matrix, O(n^3) time, O(n^2) space.
///
/// Among equal-cost optima the one produced by augmenting rows in index order
/// (scanning columns in index order) is returned.
inline SquareSolution solve_square(const CostMatrix& m) {
  if (!m.square()) {
    throw DimensionError("solve_square needs a square matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  SquareSolution out;
  out.perm = detail::shortest_augmenting_path(m.rows(), m.cols(), m);
  for (std::size_t r = 0; r < m.rows(); ++r) out.total_cost += m(r, out.perm[r]);
  return out;
}

/// Appends all-zero virtual rows until the matrix is cols x cols.
inline CostMatrix pad_to_square(const CostMatrix& m) {
  if (m.rows() > m.cols()) {
    throw DimensionError("cannot pad " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ": more rows than columns");
  }
  if (m.square()) return m;
  std::vector<double> data(m.cols() * m.cols(), 0.0);
  std::copy(m.data().begin(), m.data().end(), data.begin());
  return CostMatrix(m.cols(), m.cols(), std::move(data));
}

namespace detail {

inline Assignment assignment_from_rows(const CostMatrix& m, const std::vector<std::size_t>& row_to_col) {
  Assignment out;
  out.pairs.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double d = m(r, row_to_col[r]);
    out.pairs.push_back({VehicleId{r}, SpaceId{row_to_col[r]}, d});
    out.total_cost += d;
  }
  return out;
}

}  // namespace detail

/// Optimal injection rows -> columns by padding to square with zero rows,
/// solving, and dropping the virtual rows. Needs O(cols^2) memory.
inline Assignment solve_rectangular(const CostMatrix& m) {
  const SquareSolution sol = solve_square(pad_to_square(m));
  return detail::assignment_from_rows(
      m, std::vector<std::size_t>(sol.perm.begin(), sol.perm.begin() + static_cast<std::ptrdiff_t>(m.rows())));
}

/// Optimal injection rows -> columns without materialising the padded problem.
///
/// Same augmenting-path core as `solve_square`, run directly on the rows x cols
/// problem: O(rows^2 * cols) time and O(cols) extra space. This is the route
/// used for exact reference costs on instances where padding to cols x cols
/// would not fit in memory.
inline Assignment exact_rectangular(const CostMatrix& m) {
  if (m.rows() > m.cols()) {
    throw DimensionError("exact_rectangular needs rows <= cols, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  return detail::assignment_from_rows(m, detail::shortest_augmenting_path(m.rows(), m.cols(), m));
}

/// Rows above which `brute_force_assign` refuses to enumerate.
inline constexpr std::size_t kBruteForceMaxRows = 8;

/// Exhaustive search over every injection rows -> columns.
///
/// Columns are tried in increasing order and only a strictly cheaper
/// injection replaces the incumbent, so ties resolve to the lexicographically
/// smallest column sequence. Verification oracle only.
inline Assignment brute_force_assign(const CostMatrix& m) {
  if (m.rows() > kBruteForceMaxRows) {
    throw DimensionError("brute_force_assign is limited to " + std::to_string(kBruteForceMaxRows) +
                         " rows, got " + std::to_string(m.rows()));
  }
  if (m.rows() > m.cols()) throw DimensionError("brute_force_assign needs rows <= cols");

  std::vector<std::size_t> current(m.rows());
  std::vector<std::size_t> best;
  std::vector<char> used(m.cols(), 0);
  double best_cost = std::numeric_limits<double>::infinity();

  auto search = [&](auto&& self, std::size_t row, double partial) -> void {
    // Entries are non-negative, so no completion of this prefix can win.
    if (partial >= best_cost) return;
    if (row == m.rows()) {
      if (partial < best_cost) {
        best_cost = partial;
        best = current;
      }
      return;
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (used[c]) continue;
      used[c] = 1;
      current[row] = c;
      self(self, row + 1, partial + m(row, c));
      used[c] = 0;
    }
  };
  search(search, 0, 0.0);
  return detail::assignment_from_rows(m, best);
}

}  // namespace parkplan
