#pragma once

#include "fskm/fixed_kmeans.hpp"

namespace fskm::oracle {

/// Upper bound on multinomial(n; n_1..n_k) the exhaustive routines accept.
inline constexpr double kPartitionBudget = 1e6;

/// multinomial(n; n_1, ..., n_k), as a double to avoid overflow.
double multinomial(const SizeSpec& sizes);

/// Global minimum of the MSE over all partitions respecting `sizes`, with
/// centroids at cluster means. Clusters of equal size are interchangeable, so
/// only one representative of each relabeling class is visited.
ClusteringResult best_balanced_partition(const PointSet& points, const SizeSpec& sizes);

/// Minimum total squared distance over all size-respecting partitions with
/// the centroids held fixed. Slots of each cluster receive its points in
/// ascending index order.
Assignment best_fixed_centroid_assignment(const PointSet& points, const Eigen::MatrixXd& centroids,
                                          const SizeSpec& sizes);

/// Minimum MSE over all partitions into exactly k non-empty clusters, sizes free.
double best_unconstrained_mse(const PointSet& points, Index k);

}  // namespace fskm::oracle
