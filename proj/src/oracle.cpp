#include "fskm/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace fskm::oracle {

namespace {

void check_budget(const PointSet& points, const SizeSpec& sizes) {
  if (sizes.total() != points.rows()) {
    throw InvalidInput("sizes sum " + std::to_string(sizes.total()) + " != n " + std::to_string(points.rows()));
  }
  const double count = multinomial(sizes);
  if (count > kPartitionBudget) {
    throw SizeLimitError("exhaustive enumeration of " + std::to_string(count) + " partitions exceeds budget");
  }
}

// Visits every assignment of points 0..n-1 to clusters with the remaining
// capacities. `admissible(point, cluster)` can prune a branch.
void enumerate(Index n, std::vector<Index> capacity, const std::function<bool(const Partition&, Index)>& admissible,
               const std::function<void(const Partition&)>& visit) {
  Partition labels(static_cast<std::size_t>(n), -1);
  std::function<void(Index)> recurse = [&](Index point) {
    if (point == n) {
      visit(labels);
      return;
    }
    for (Index j = 0; j < static_cast<Index>(capacity.size()); ++j) {
      auto& left = capacity[static_cast<std::size_t>(j)];
      if (left == 0 || !admissible(labels, j)) continue;
      --left;
      labels[static_cast<std::size_t>(point)] = j;
      recurse(point + 1);
      labels[static_cast<std::size_t>(point)] = -1;
      ++left;
    }
  };
  recurse(0);
}

}  // namespace

double multinomial(const SizeSpec& sizes) {
  double log_count = std::lgamma(static_cast<double>(sizes.total()) + 1.0);
  for (const auto s : sizes.sizes()) log_count -= std::lgamma(static_cast<double>(s) + 1.0);
  return std::round(std::exp(log_count));
}

ClusteringResult best_balanced_partition(const PointSet& points, const SizeSpec& sizes) {
  check_budget(points, sizes);
  const Index k = sizes.k();

  // A cluster may only be opened once every earlier cluster of the same size
  // already holds a point, which fixes one labeling per equivalence class.
  auto admissible = [&](const Partition& labels, Index j) {
    for (Index earlier = 0; earlier < j; ++earlier) {
      if (sizes[earlier] != sizes[j]) continue;
      const bool j_open = std::find(labels.begin(), labels.end(), j) != labels.end();
      if (j_open) return true;
      if (std::find(labels.begin(), labels.end(), earlier) == labels.end()) return false;
    }
    return true;
  };

  ClusteringResult best;
  best.mse = std::numeric_limits<double>::infinity();
  enumerate(points.rows(), sizes.sizes(), admissible, [&](const Partition& labels) {
    const Eigen::MatrixXd means = update_step(points, labels, k);
    const double mse = compute_mse(points, labels, means);
    if (mse < best.mse) {
      best.partition = labels;
      best.centroids = {means, 0};
      best.mse = mse;
    }
  });
  best.converged = true;
  best.mse_history = {best.mse};
  return best;
}

Assignment best_fixed_centroid_assignment(const PointSet& points, const Eigen::MatrixXd& centroids,
                                          const SizeSpec& sizes) {
  check_budget(points, sizes);
  if (centroids.rows() != sizes.k() || centroids.cols() != points.cols()) {
    throw InvalidInput("centroids must be k x d");
  }

  Assignment best;
  best.cost = std::numeric_limits<double>::infinity();
  enumerate(
      points.rows(), sizes.sizes(), [](const Partition&, Index) { return true; },
      [&](const Partition& labels) {
        double cost = 0.0;
        for (Index i = 0; i < points.rows(); ++i) {
          cost += (points.row(i) - centroids.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
        }
        if (cost < best.cost) {
          best.cost = cost;
          best.partition = labels;
        }
      });

  const SlotLayout layout(sizes);
  std::vector<Index> next_slot(static_cast<std::size_t>(sizes.k()), 0);
  for (Index j = 1; j < sizes.k(); ++j) next_slot[static_cast<std::size_t>(j)] = layout.cumulative()[j - 1];
  best.slot_to_point.assign(static_cast<std::size_t>(points.rows()), -1);
  for (Index i = 0; i < points.rows(); ++i) {
    best.slot_to_point[static_cast<std::size_t>(next_slot[best.partition[static_cast<std::size_t>(i)]]++)] = i;
  }
  return best;
}

double best_unconstrained_mse(const PointSet& points, Index k) {
  const Index n = points.rows();
  if (k < 1 || k > n) throw InvalidInput("need 1 <= k <= n");
  if (std::pow(static_cast<double>(k), static_cast<double>(n)) > kPartitionBudget) {
    throw SizeLimitError("unconstrained enumeration exceeds budget");
  }

  double best = std::numeric_limits<double>::infinity();
  Partition labels(static_cast<std::size_t>(n), 0);
  // Restricted growth strings: label i is at most one more than the largest earlier label.
  std::function<void(Index, Index)> recurse = [&](Index point, Index used) {
    if (point == n) {
      if (used != k) return;
      const Eigen::MatrixXd means = update_step(points, labels, k);
      best = std::min(best, compute_mse(points, labels, means));
      return;
    }
    if (k - used > n - point) return;
    for (Index j = 0; j <= std::min(used, k - 1); ++j) {
      labels[static_cast<std::size_t>(point)] = j;
      recurse(point + 1, std::max(used, j + 1));
    }
  };
  recurse(0, 0);
  return best;
}

}  // namespace fskm::oracle
