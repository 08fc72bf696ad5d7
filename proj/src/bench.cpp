#include "fskm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/QR>

namespace fskm::bench {

PointSet gaussian_mixture(Index n, Index dim, Index k, std::uint64_t seed) {
  if (n < 1 || dim < 1 || k < 1) throw InvalidInput("gaussian_mixture needs positive n, dim and k");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> spread(0.0, 10.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  Eigen::MatrixXd means(k, dim);
  for (Index j = 0; j < k; ++j)
    for (Index c = 0; c < dim; ++c) means(j, c) = spread(rng);

  PointSet points(n, dim);
  for (Index i = 0; i < n; ++i)
    for (Index c = 0; c < dim; ++c) points(i, c) = means(i % k, c) + noise(rng);
  return points;
}

double fit_growth_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidInput("exponent fit needs matching x and y");
  if (x.size() < 2) return 0.0;
  Eigen::MatrixXd design(x.size(), 2);
  Eigen::VectorXd target(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x[i]);
    target(i) = std::log(y[i]);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(target);
  return coef(1);
}

Report run(const std::vector<Index>& ns, Index dim, std::uint64_t seed, Index k, int repetitions) {
  using Clock = std::chrono::steady_clock;
  Report report;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const Index n : ns) {
    if (n < 1) throw InvalidInput("benchmark sizes must be positive");
    Row row;
    row.n = n;
    row.k = k > 0 ? std::min(k, n) : default_clusters(n);
    const PointSet points = gaussian_mixture(n, dim, row.k, seed);
    const SizeSpec sizes = SizeSpec::balanced(n, row.k);
    const SlotLayout layout(sizes);
    // Each repetition starts from a different centroid draw; the median is reported.
    std::vector<double> timings;
    for (int rep = 0; rep < std::max(1, repetitions); ++rep) {
      const Eigen::MatrixXd centroids = points(initial_indices(n, row.k, seed, rep), Eigen::all);
      const auto start = Clock::now();
      const Assignment assignment = assignment_step(points, centroids, layout);
      const std::chrono::duration<double> elapsed = Clock::now() - start;
      if (assignment.partition.empty()) throw std::logic_error("empty assignment");
      timings.push_back(elapsed.count());
    }
    std::nth_element(timings.begin(), timings.begin() + timings.size() / 2, timings.end());
    row.assignment_seconds = timings[timings.size() / 2];

    RunConfig config;
    config.seed = seed;
    config.restarts = 1;
    const auto start = Clock::now();
    const ClusteringResult result = cluster(points, sizes, config);
    const std::chrono::duration<double> elapsed = Clock::now() - start;
    row.total_seconds = elapsed.count();
    row.iterations = result.iterations;

    report.rows.push_back(row);
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::max(row.assignment_seconds, 1e-9));
  }
  report.exponent = fit_growth_exponent(xs, ys);
  return report;
}

}  // namespace fskm::bench
