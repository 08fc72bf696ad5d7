#include "fskm/fixed_kmeans.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace fskm {

SizeSpec::SizeSpec(std::vector<Index> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw InvalidInput("at least one cluster size is required");
  for (std::size_t j = 0; j < sizes_.size(); ++j) {
    if (sizes_[j] < 1) {
      throw InvalidInput("cluster size " + std::to_string(j) + " is " + std::to_string(sizes_[j]) +
                         ", sizes must be positive");
    }
    total_ += sizes_[j];
  }
}

SizeSpec SizeSpec::balanced(Index n, Index k) {
  if (k < 1 || k > n) throw InvalidInput("balanced sizes need 1 <= k <= n");
  std::vector<Index> sizes(static_cast<std::size_t>(k), n / k);
  for (Index j = 0; j < n % k; ++j) ++sizes[static_cast<std::size_t>(j)];
  return SizeSpec(std::move(sizes));
}

SlotLayout::SlotLayout(const SizeSpec& sizes) {
  cumulative_.reserve(sizes.sizes().size());
  Index running = 0;
  for (const auto size : sizes.sizes()) cumulative_.push_back(running += size);

  slot_to_cluster_.resize(static_cast<std::size_t>(running));
  for (Index slot = 0; slot < running; ++slot) {
    // first j with c(j) >= a, slots counted from 1
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), slot + 1);
    slot_to_cluster_[static_cast<std::size_t>(slot)] = it - cumulative_.begin();
  }
}

std::vector<Index> cluster_counts(const Partition& partition, Index k) {
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (const auto j : partition) {
    if (j >= 0 && j < k) ++counts[static_cast<std::size_t>(j)];
  }
  return counts;
}

bool is_exactly_balanced(const Partition& partition, const SizeSpec& sizes) {
  if (static_cast<Index>(partition.size()) != sizes.total()) return false;
  for (const auto j : partition) {
    if (j < 0 || j >= sizes.k()) return false;
  }
  return cluster_counts(partition, sizes.k()) == sizes.sizes();
}

namespace {

void validate_problem(const PointSet& points, const SizeSpec& sizes, const RunConfig& config) {
  if (points.rows() < 1) throw InvalidInput("point set is empty");
  if (points.cols() < 1) throw InvalidInput("points must have at least one coordinate");
  if (!points.allFinite()) throw InvalidInput("point coordinates must be finite");
  if (sizes.k() > points.rows()) {
    throw InvalidInput("k " + std::to_string(sizes.k()) + " > n " + std::to_string(points.rows()));
  }
  if (sizes.total() != points.rows()) {
    throw InvalidInput("sizes sum " + std::to_string(sizes.total()) + " != n " + std::to_string(points.rows()));
  }
  if (config.max_iter < 1) throw InvalidInput("max_iter must be at least 1");
  if (config.restarts < 1) throw InvalidInput("restarts must be at least 1");
}

// Sum of squared distances of a partition under the given centroids.
double partition_cost(const PointSet& points, const Partition& partition, const Eigen::MatrixXd& centroids) {
  double total = 0.0;
  for (Index i = 0; i < points.rows(); ++i) {
    total += (points.row(i) - centroids.row(partition[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return total;
}

// Relative margin a new assignment must beat the current partition by. Below
// it the two are treated as tied and the current partition is kept, so
// equal-cost matchings cannot make the run cycle.
constexpr double kImprovementMargin = 1e-12;

ClusteringResult run_from(const PointSet& points, const SizeSpec& sizes, const SlotLayout& layout,
                          Eigen::MatrixXd centroids, int max_iter) {
  ClusteringResult result;
  Partition current;
  int updates = 0;
  bool converged = false;

  while (true) {
    Assignment next = assignment_step(points, centroids, layout);
    if (!current.empty()) {
      const double current_cost = partition_cost(points, current, centroids);
      if (next.partition == current || !(next.cost < current_cost * (1.0 - kImprovementMargin))) {
        converged = true;
        break;
      }
    }
    if (updates == max_iter) break;
    current = std::move(next.partition);
    centroids = update_step(points, current, sizes.k());
    ++updates;
    result.mse_history.push_back(compute_mse(points, current, centroids));
  }

  if (!is_exactly_balanced(current, sizes)) throw std::logic_error("fixed-size clustering lost exact balance");
  result.partition = std::move(current);
  result.centroids = {std::move(centroids), updates};
  result.mse = result.mse_history.back();
  result.iterations = updates;
  result.converged = converged;
  return result;
}

Eigen::MatrixXd gather_rows(const PointSet& points, const std::vector<Index>& rows) {
  return points(rows, Eigen::all);
}

}  // namespace

ClusteringResult cluster_from(const PointSet& points, const SizeSpec& sizes, const Eigen::MatrixXd& initial,
                              const RunConfig& config) {
  validate_problem(points, sizes, config);
  if (initial.rows() != sizes.k() || initial.cols() != points.cols()) {
    throw InvalidInput("initial centroids must be k x d");
  }
  return run_from(points, sizes, SlotLayout(sizes), initial, config.max_iter);
}

std::vector<Index> initial_indices(Index n, Index k, std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  // Partial Fisher-Yates: the first k entries are a uniform draw without replacement.
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

ClusteringResult cluster(const PointSet& points, const SizeSpec& sizes, const RunConfig& config) {
  validate_problem(points, sizes, config);
  const auto seeds = initial_indices(points.rows(), sizes.k(), config.seed, 0);
  return run_from(points, sizes, SlotLayout(sizes), gather_rows(points, seeds), config.max_iter);
}

ClusteringResult cluster_multi_restart(const PointSet& points, const SizeSpec& sizes, const RunConfig& config) {
  validate_problem(points, sizes, config);
  const SlotLayout layout(sizes);

  struct Best {
    ClusteringResult result;
    int restart = -1;
    double mse = std::numeric_limits<double>::infinity();
    bool beats(double mse_other, int restart_other) const {
      return restart < 0 || mse_other < mse || (mse_other == mse && restart_other < restart);
    }
  };

  std::atomic<int> next_restart{0};
  std::mutex merge_mutex;
  Best best;

  auto worker = [&] {
    Best local;
    for (int r = next_restart++; r < config.restarts; r = next_restart++) {
      const auto seeds = initial_indices(points.rows(), sizes.k(), config.seed, r);
      auto run = run_from(points, sizes, layout, gather_rows(points, seeds), config.max_iter);
      const double mse = run.mse;
      if (local.beats(mse, r)) local = {std::move(run), r, mse};
    }
    std::lock_guard lock(merge_mutex);
    if (local.restart >= 0 && best.beats(local.mse, local.restart)) best = std::move(local);
  };

  const unsigned threads = std::clamp<unsigned>(config.threads, 1u, static_cast<unsigned>(config.restarts));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  best.result.restarts_used = config.restarts;
  best.result.best_restart = best.restart;
  return std::move(best.result);
}

}  // namespace fskm
