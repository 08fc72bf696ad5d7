#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "fskm/fixed_kmeans.hpp"

namespace fskm::test_support {

inline Eigen::MatrixXd random_matrix(Index rows, Index cols, std::mt19937_64& rng, double lo = 0.0,
                                     double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = u(rng);
  return m;
}

/// Random composition of n into k positive parts.
inline SizeSpec random_sizes(Index n, Index k, std::mt19937_64& rng) {
  std::vector<Index> sizes(static_cast<std::size_t>(k), 1);
  std::uniform_int_distribution<Index> pick(0, k - 1);
  for (Index extra = n - k; extra > 0; --extra) ++sizes[static_cast<std::size_t>(pick(rng))];
  return SizeSpec(sizes);
}

/// Random partition with exactly sizes[j] members in cluster j.
inline Partition random_partition(const SizeSpec& sizes, std::mt19937_64& rng) {
  Partition labels;
  for (Index j = 0; j < sizes.k(); ++j) labels.insert(labels.end(), static_cast<std::size_t>(sizes[j]), j);
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

inline double squared_distance(const Eigen::MatrixXd& a, Index i, const Eigen::MatrixXd& b, Index j) {
  double total = 0.0;
  for (Index c = 0; c < a.cols(); ++c) {
    const double diff = a(i, c) - b(j, c);
    total += diff * diff;
  }
  return total;
}

/// Mean squared error by direct double loop over clusters and members.
inline double naive_mse(const Eigen::MatrixXd& points, const Partition& partition, const Eigen::MatrixXd& centroids) {
  double total = 0.0;
  for (Index j = 0; j < centroids.rows(); ++j) {
    for (Index i = 0; i < points.rows(); ++i) {
      if (partition[static_cast<std::size_t>(i)] == j) total += squared_distance(points, i, centroids, j);
    }
  }
  return total / static_cast<double>(points.rows());
}

/// Per-cluster means by explicit accumulation.
inline Eigen::MatrixXd naive_means(const Eigen::MatrixXd& points, const Partition& partition, Index k) {
  Eigen::MatrixXd means(k, points.cols());
  for (Index j = 0; j < k; ++j) {
    for (Index c = 0; c < points.cols(); ++c) {
      double sum = 0.0;
      int count = 0;
      for (Index i = 0; i < points.rows(); ++i) {
        if (partition[static_cast<std::size_t>(i)] == j) {
          sum += points(i, c);
          ++count;
        }
      }
      means(j, c) = sum / count;
    }
  }
  return means;
}

}  // namespace fskm::test_support
