#pragma once

#include <cstdint>
#include <vector>

#include "fskm/fixed_kmeans.hpp"

namespace fskm::bench {

/// n points drawn round-robin from k isotropic unit-variance Gaussians whose
/// means are themselves N(0, 10^2) per coordinate. Deterministic in `seed`.
PointSet gaussian_mixture(Index n, Index dim, Index k, std::uint64_t seed);

/// Default cluster count for a benchmark of n points.
inline Index default_clusters(Index n) { return std::min<Index>(n, 10); }

struct Row {
  Index n = 0;
  Index k = 0;
  double assignment_seconds = 0.0;  // median over repetitions from different centroid draws
  double total_seconds = 0.0;       // one full single-restart run
  int iterations = 0;
};

struct Report {
  std::vector<Row> rows;
  double exponent = 0.0;  // least-squares slope of log(assignment time) on log(n); 0 with < 2 rows
};

/// Slope of the least-squares line through (log x, log y).
double fit_growth_exponent(const std::vector<double>& x, const std::vector<double>& y);

/// Times the assignment step and a full run for every n, balanced sizes.
/// `k` of 0 picks default_clusters(n).
Report run(const std::vector<Index>& ns, Index dim, std::uint64_t seed, Index k = 0, int repetitions = 5);

}  // namespace fskm::bench
