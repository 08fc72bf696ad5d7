#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "fskm/errors.hpp"

namespace fskm {

/// Minimum-cost bijection between the rows and columns of a square cost matrix.
/// `assignment[row]` is the column matched to `row`.
template <typename Scalar>
struct Matching {
  std::vector<Eigen::Index> assignment;
  Scalar total_cost{0};
};

namespace detail {

template <typename Derived>
void validate_costs(const Eigen::MatrixBase<Derived>& costs) {
  if (costs.rows() != costs.cols()) {
    std::ostringstream msg;
    msg << "cost matrix must be square, got " << costs.rows() << "x" << costs.cols();
    throw InvalidInput(msg.str());
  }
  if (costs.rows() < 1) throw InvalidInput("cost matrix must have at least one row");
  for (Eigen::Index c = 0; c < costs.cols(); ++c) {
    for (Eigen::Index r = 0; r < costs.rows(); ++r) {
      const auto value = costs(r, c);
      if (!std::isfinite(value) || value < 0) {
        std::ostringstream msg;
        msg << "cost entry (" << r << ", " << c << ") = " << value
            << " is not a finite nonnegative number";
        throw InvalidInput(msg.str());
      }
    }
  }
}

template <typename Derived>
typename Derived::Scalar matched_cost(const Eigen::MatrixBase<Derived>& costs,
                                      const std::vector<Eigen::Index>& assignment) {
  typename Derived::Scalar total{0};
  for (Eigen::Index row = 0; row < costs.rows(); ++row) total += costs(row, assignment[row]);
  return total;
}

}  // namespace detail

/// Solves the square linear assignment problem exactly in O(n^3).
///
/// Shortest-augmenting-path Hungarian method with dual potentials on the rows.
/// Columns are inserted one at a time; a Dijkstra search over reduced costs
/// finds the cheapest alternating path to a free row, after which the
/// potentials of every row settled by the search are shifted so that all
/// reduced costs stay nonnegative and matched pairs stay tight. Rows tied at
/// the current minimum distance are settled as a group. Columns are the
/// inserted side so that the hot loop walks contiguous memory of a
/// column-major matrix. Ties are broken by scan order, so results are deterministic.
template <typename Derived>
Matching<typename Derived::Scalar> solve(const Eigen::MatrixBase<Derived>& costs) {
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  constexpr Eigen::Index kFree = -1;

  detail::validate_costs(costs);
  const Eigen::Ref<const Plain> m(costs.derived());
  const Eigen::Index n = m.rows();

  std::vector<Scalar> row_pot(n, Scalar{0});
  std::vector<Eigen::Index> col_of_row(n, kFree);
  std::vector<Eigen::Index> row_of_col(n, kFree);
  std::vector<Scalar> dist(n);
  std::vector<Eigen::Index> pred(n);
  // rows[0, settled) are settled, rows[settled, scanned) are at the current
  // minimum distance and wait to be expanded, rows[scanned, n) are unreached.
  std::vector<Eigen::Index> rows(n);

  for (Eigen::Index source = 0; source < n; ++source) {
    const Scalar* entries = m.col(source).data();
    for (Eigen::Index r = 0; r < n; ++r) {
      dist[r] = entries[r] - row_pot[r];
      pred[r] = source;
      rows[r] = r;
    }

    Eigen::Index settled = 0;
    Eigen::Index scanned = 0;
    Eigen::Index target = kFree;
    Scalar frontier{0};
    while (target == kFree) {
      if (settled == scanned) {
        // Pull every unreached row at the minimum distance into the scan set.
        scanned = settled;
        frontier = dist[rows[scanned]];
        for (Eigen::Index k = settled; k < n; ++k) {
          const Eigen::Index r = rows[k];
          if (dist[r] <= frontier) {
            if (dist[r] < frontier) {
              scanned = settled;
              frontier = dist[r];
            }
            std::swap(rows[k], rows[scanned++]);
          }
        }
        // Lowest-index free row among the ties ends the search.
        for (Eigen::Index k = settled; k < scanned; ++k) {
          const Eigen::Index r = rows[k];
          if (col_of_row[r] == kFree && (target == kFree || r < target)) target = r;
        }
        if (target != kFree) break;
      }

      const Eigen::Index r = rows[settled++];
      const Eigen::Index col = col_of_row[r];
      const Scalar* col_entries = m.col(col).data();
      const Scalar offset = col_entries[r] - row_pot[r] - frontier;
      for (Eigen::Index k = scanned; k < n; ++k) {
        const Eigen::Index r2 = rows[k];
        const Scalar reduced = col_entries[r2] - row_pot[r2] - offset;
        if (reduced < dist[r2]) {
          dist[r2] = reduced;
          pred[r2] = col;
          if (reduced == frontier) {
            if (col_of_row[r2] == kFree) {
              target = r2;
              break;
            }
            std::swap(rows[k], rows[scanned++]);
          }
        }
      }
    }

    for (Eigen::Index k = 0; k < settled; ++k) {
      const Eigen::Index r = rows[k];
      row_pot[r] += dist[r] - frontier;
    }

    for (Eigen::Index r = target;;) {
      const Eigen::Index col = pred[r];
      const Eigen::Index previous = row_of_col[col];
      col_of_row[r] = col;
      row_of_col[col] = r;
      if (col == source) break;
      r = previous;
    }
  }

  Matching<Scalar> result;
  result.assignment.assign(col_of_row.begin(), col_of_row.end());
  result.total_cost = detail::matched_cost(m, result.assignment);
  return result;
}

/// Exhaustive minimum over all n! permutations. Test oracle; n is capped at 10.
template <typename Derived>
Matching<typename Derived::Scalar> brute_force_solve(const Eigen::MatrixBase<Derived>& costs) {
  using Scalar = typename Derived::Scalar;
  constexpr Eigen::Index kMaxSize = 10;

  detail::validate_costs(costs);
  if (costs.rows() > kMaxSize) {
    std::ostringstream msg;
    msg << "brute-force assignment limited to n <= " << kMaxSize << ", got n = " << costs.rows();
    throw SizeLimitError(msg.str());
  }

  std::vector<Eigen::Index> perm(static_cast<std::size_t>(costs.rows()));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  Matching<Scalar> best{perm, detail::matched_cost(costs, perm)};
  while (std::next_permutation(perm.begin(), perm.end())) {
    const Scalar cost = detail::matched_cost(costs, perm);
    if (cost < best.total_cost) best = {perm, cost};
  }
  return best;
}

/// True when `assignment` is a permutation of [0, n).
inline bool is_permutation(const std::vector<Eigen::Index>& assignment) {
  std::vector<char> seen(assignment.size(), 0);
  for (const auto idx : assignment) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= assignment.size() || seen[idx]) return false;
    seen[idx] = 1;
  }
  return true;
}

}  // namespace fskm
