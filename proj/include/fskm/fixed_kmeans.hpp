#pragma once

#include <cstdint>
#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "fskm/errors.hpp"
#include "fskm/hungarian.hpp"

namespace fskm {

using Index = Eigen::Index;

/// Data points, one per row (n x d).
using PointSet = Eigen::MatrixXd;

/// Point index -> cluster index, both 0-based.
using Partition = std::vector<Index>;

/// Ordered cluster sizes n_1..n_k. Cluster j of every output holds exactly sizes()[j] points.
class SizeSpec {
 public:
  SizeSpec() = default;
  explicit SizeSpec(std::vector<Index> sizes);

  /// `k` clusters whose sizes differ by at most one, larger ones first.
  static SizeSpec balanced(Index n, Index k);

  Index k() const { return static_cast<Index>(sizes_.size()); }
  Index total() const { return total_; }
  Index operator[](Index cluster) const { return sizes_[static_cast<std::size_t>(cluster)]; }
  const std::vector<Index>& sizes() const { return sizes_; }

  friend bool operator==(const SizeSpec&, const SizeSpec&) = default;

 private:
  std::vector<Index> sizes_;
  Index total_ = 0;
};

/// Slots 0..n-1 laid out cluster by cluster: slot a belongs to the first
/// cluster j whose cumulative size c(j) = n_1 + ... + n_j exceeds a.
class SlotLayout {
 public:
  explicit SlotLayout(const SizeSpec& sizes);

  Index slots() const { return static_cast<Index>(slot_to_cluster_.size()); }
  Index clusters() const { return static_cast<Index>(cumulative_.size()); }
  const std::vector<Index>& cumulative() const { return cumulative_; }
  const std::vector<Index>& slot_to_cluster() const { return slot_to_cluster_; }
  Index cluster_of(Index slot) const { return slot_to_cluster_[static_cast<std::size_t>(slot)]; }

 private:
  std::vector<Index> cumulative_;
  std::vector<Index> slot_to_cluster_;
};

inline SlotLayout build_layout(const SizeSpec& sizes) { return SlotLayout(sizes); }

/// Cluster representatives, one per row (k x d), tagged with the iteration that produced them.
struct Centroids {
  Eigen::MatrixXd locations;
  int iteration = 0;
};

/// A slot/point bijection together with the partition it induces.
struct Assignment {
  std::vector<Index> slot_to_point;
  Partition partition;
  double cost = 0.0;  // sum of squared point-to-centroid distances
};

struct RunConfig {
  static constexpr std::uint64_t kDefaultSeed = 20150612;

  std::uint64_t seed = kDefaultSeed;
  int restarts = 10;
  int max_iter = 10000;
  unsigned threads = 1;
};

struct ClusteringResult {
  Partition partition;
  Centroids centroids;
  double mse = 0.0;
  int iterations = 0;
  int restarts_used = 1;
  bool converged = false;           // false when max_iter stopped the run
  std::vector<double> mse_history;  // MSE after every update step
  int best_restart = 0;
};

// ---------------------------------------------------------------------------
// Building blocks. Templated on the Eigen expression type so callers can pass
// blocks, maps, or float matrices without copies.

/// Mean squared distance from each point to the centroid of its cluster.
template <typename PointsDerived, typename CentroidsDerived>
double compute_mse(const Eigen::MatrixBase<PointsDerived>& points, const Partition& partition,
                   const Eigen::MatrixBase<CentroidsDerived>& centroids) {
  if (static_cast<Index>(partition.size()) != points.rows()) {
    throw InvalidInput("partition covers " + std::to_string(partition.size()) + " points, expected " +
                       std::to_string(points.rows()));
  }
  if (centroids.cols() != points.cols()) throw InvalidInput("centroid dimension does not match points");
  double sse = 0.0;
  for (Index i = 0; i < points.rows(); ++i) {
    const Index j = partition[static_cast<std::size_t>(i)];
    if (j < 0 || j >= centroids.rows()) {
      std::ostringstream msg;
      msg << "point " << i << " assigned to nonexistent cluster " << j;
      throw InvalidInput(msg.str());
    }
    sse += (points.row(i) - centroids.row(j)).squaredNorm();
  }
  return sse / static_cast<double>(points.rows());
}

/// Edge weights of the slot/point bipartite graph: entry (a, i) is the squared
/// distance from point i to the centroid of the cluster owning slot a.
template <typename PointsDerived, typename CentroidsDerived>
Eigen::Matrix<typename PointsDerived::Scalar, Eigen::Dynamic, Eigen::Dynamic> compute_weights(
    const Eigen::MatrixBase<PointsDerived>& points, const Eigen::MatrixBase<CentroidsDerived>& centroids,
    const SlotLayout& layout) {
  using Scalar = typename PointsDerived::Scalar;
  if (layout.slots() != points.rows()) throw InvalidInput("slot layout does not match point count");
  if (layout.clusters() != centroids.rows()) throw InvalidInput("slot layout does not match centroid count");
  if (centroids.cols() != points.cols()) throw InvalidInput("centroid dimension does not match points");

  // One row of squared distances per cluster, then expand to one row per slot.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> per_cluster(centroids.rows(), points.rows());
  for (Index j = 0; j < centroids.rows(); ++j) {
    per_cluster.row(j) =
        (points.rowwise() - centroids.row(j).template cast<Scalar>()).rowwise().squaredNorm().transpose();
  }
  return per_cluster(layout.slot_to_cluster(), Eigen::all);
}

/// Minimum-cost size-respecting assignment of points to clusters for fixed centroids.
template <typename PointsDerived, typename CentroidsDerived>
Assignment assignment_step(const Eigen::MatrixBase<PointsDerived>& points,
                           const Eigen::MatrixBase<CentroidsDerived>& centroids, const SlotLayout& layout) {
  const auto weights = compute_weights(points, centroids, layout);
  auto matching = solve(weights);

  Assignment out;
  out.partition.assign(static_cast<std::size_t>(points.rows()), Index{-1});
  for (Index slot = 0; slot < layout.slots(); ++slot) {
    out.partition[static_cast<std::size_t>(matching.assignment[slot])] = layout.cluster_of(slot);
  }
  out.slot_to_point = std::move(matching.assignment);
  out.cost = static_cast<double>(matching.total_cost);
  return out;
}

/// Cluster means for a partition into `k` clusters. Every cluster must be non-empty.
template <typename PointsDerived>
Eigen::MatrixXd update_step(const Eigen::MatrixBase<PointsDerived>& points, const Partition& partition, Index k) {
  if (static_cast<Index>(partition.size()) != points.rows()) throw InvalidInput("partition size mismatch");
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
  for (Index i = 0; i < points.rows(); ++i) {
    const Index j = partition[static_cast<std::size_t>(i)];
    if (j < 0 || j >= k) throw InvalidInput("point " + std::to_string(i) + " assigned to nonexistent cluster");
    sums.row(j) += points.row(i).template cast<double>();
    counts(j) += 1.0;
  }
  for (Index j = 0; j < k; ++j) {
    if (counts(j) == 0.0) throw InvalidInput("cluster " + std::to_string(j) + " is empty");
  }
  return sums.array().colwise() / counts.array();
}

/// Per-cluster member counts of a partition.
std::vector<Index> cluster_counts(const Partition& partition, Index k);

/// True when cluster j holds exactly sizes[j] points for every j.
bool is_exactly_balanced(const Partition& partition, const SizeSpec& sizes);

// ---------------------------------------------------------------------------
// Drivers.

/// One run from explicit initial centroids: alternate assignment and update
/// until the partition stops changing or max_iter update steps have run.
ClusteringResult cluster_from(const PointSet& points, const SizeSpec& sizes, const Eigen::MatrixXd& initial,
                              const RunConfig& config);

/// Indices of the k distinct points restart `restart` draws as initial centroids.
std::vector<Index> initial_indices(Index n, Index k, std::uint64_t seed, int restart);

/// One run seeded by config.seed (identical to restart 0 of cluster_multi_restart).
ClusteringResult cluster(const PointSet& points, const SizeSpec& sizes, const RunConfig& config);

/// config.restarts independent runs; the lowest-MSE result wins, ties to the lowest restart index.
ClusteringResult cluster_multi_restart(const PointSet& points, const SizeSpec& sizes, const RunConfig& config);

}  // namespace fskm
