// fskm: fixed-size k-means clustering, seating plans, and timing benchmarks.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "fskm/bench.hpp"
#include "fskm/io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;

struct SharedOptions {
  std::string sizes;
  std::optional<std::uint64_t> seed;
  bool random_seed = false;
  int restarts = 0;
  int max_iter = 10000;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string out = ".";
};

void add_shared(CLI::App* cmd, SharedOptions& opts, int default_restarts, bool sizes_required) {
  opts.restarts = default_restarts;
  auto* sizes = cmd->add_option("--sizes", opts.sizes, "Cluster sizes in order, e.g. 4,4,5,6,3");
  if (sizes_required) sizes->required();
  cmd->add_option("--seed", opts.seed, "Random seed (overrides FSKM_SEED)");
  cmd->add_flag("--random-seed", opts.random_seed, "Draw the seed from system entropy");
  cmd->add_option("--restarts", opts.restarts, "Independent restarts; best MSE is kept")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iter", opts.max_iter, "Iteration cap per restart")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads, "Worker threads for restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts.out, "Output directory")->capture_default_str();
}

std::uint64_t resolve_seed(const SharedOptions& opts) {
  if (opts.seed) return *opts.seed;
  if (opts.random_seed) {
    std::random_device entropy;
    return (static_cast<std::uint64_t>(entropy()) << 32) | entropy();
  }
  if (const char* env = std::getenv("FSKM_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw fskm::InvalidInput(std::string("FSKM_SEED: expected an unsigned integer, got '") + env + "'");
  }
  return fskm::RunConfig::kDefaultSeed;
}

fskm::RunConfig make_config(const SharedOptions& opts) {
  fskm::RunConfig config;
  config.seed = resolve_seed(opts);
  config.restarts = opts.restarts;
  config.max_iter = opts.max_iter;
  config.threads = opts.threads;
  return config;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

int run_cluster(const std::string& points_file, const SharedOptions& opts) {
  const auto points = fskm::io::load_points(points_file);
  const auto sizes = fskm::io::parse_sizes(opts.sizes);
  const auto config = make_config(opts);
  const auto result = fskm::cluster_multi_restart(points, sizes, config);

  const fs::path dir(opts.out);
  auto partition = open_output(dir, "partition.txt");
  fskm::io::write_partition(partition, result.partition);
  auto centroids = open_output(dir, "centroids.txt");
  fskm::io::write_centroids(centroids, result.centroids.locations);
  const auto summary = fskm::io::clustering_summary_json(result, sizes, points.cols(), config.seed);
  open_output(dir, "summary.json") << summary;
  std::cout << summary;
  if (!result.converged) std::cerr << "warning: best restart stopped at --max-iter before converging\n";
  return 0;
}

int run_seatplan(const std::string& matrix_file, const SharedOptions& opts, double mds_tol) {
  const auto matrix = fskm::io::load_compatibility_csv(matrix_file);
  const auto sizes = fskm::io::parse_sizes(opts.sizes);
  fskm::SeatplanConfig config{make_config(opts), mds_tol};
  const auto plan = fskm::plan(matrix.distances, matrix.guests, sizes, config);

  const fs::path dir(opts.out);
  auto text = open_output(dir, "plan.txt");
  fskm::io::write_plan_text(text, plan);
  open_output(dir, "plan.json") << fskm::io::plan_json(plan);
  fskm::io::write_plan_text(std::cout, plan);
  if (plan.discarded_negative_mass > 0.0) {
    std::cerr << "note: matrix is not Euclidean; discarded negative eigenvalue mass "
              << plan.discarded_negative_mass << "\n";
  }
  return 0;
}

int run_bench(const std::vector<fskm::Index>& ns, fskm::Index dim, fskm::Index k, int reps,
              const SharedOptions& opts, bool write_csv) {
  const auto seed = resolve_seed(opts);
  const auto report = fskm::bench::run(ns, dim, seed, k, reps);

  std::ostringstream table;
  table << "n,k,assignment_seconds,total_seconds,iterations\n";
  for (const auto& row : report.rows) {
    table << row.n << ',' << row.k << ',' << std::setprecision(6) << row.assignment_seconds << ','
          << row.total_seconds << ',' << row.iterations << '\n';
  }
  std::cout << table.str() << "assignment_exponent," << std::setprecision(4) << report.exponent << '\n';
  if (write_csv) open_output(fs::path(opts.out), "bench.csv") << table.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-size clusters k-means"};
  app.require_subcommand(1);

  SharedOptions cluster_opts;
  std::string points_file;
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster a point file into clusters of given sizes");
  cluster_cmd->add_option("points", points_file, "Point file: one point per line")->required();
  add_shared(cluster_cmd, cluster_opts, 10, true);

  SharedOptions seat_opts;
  std::string matrix_file;
  double mds_tol = 1e-9;
  auto* seat_cmd = app.add_subcommand("seatplan", "Seat guests at tables from a compatibility matrix");
  seat_cmd->add_option("matrix", matrix_file, "CSV compatibility distance matrix with guest names")->required();
  add_shared(seat_cmd, seat_opts, 1000, true);
  seat_cmd->add_option("--mds-tol", mds_tol, "Relative eigenvalue cutoff for the embedding")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  SharedOptions bench_opts;
  std::vector<fskm::Index> bench_ns{100, 200, 400, 800};
  fskm::Index bench_dim = 2;
  fskm::Index bench_k = 0;
  int bench_reps = 5;
  std::string sizes_mode = "balanced";
  auto* bench_cmd = app.add_subcommand("bench", "Time the assignment step on Gaussian mixtures");
  add_shared(bench_cmd, bench_opts, 1, false);
  bench_cmd->add_option("--n", bench_ns, "Point counts")->delimiter(',')->check(CLI::PositiveNumber);
  bench_cmd->add_option("--dim", bench_dim, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--k", bench_k, "Clusters per run (default min(n, 10))")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--reps", bench_reps, "Assignment-step timings per n, each from a different centroid draw")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--sizes-mode", sizes_mode, "Cluster size scheme")
      ->check(CLI::IsMember({"balanced"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*cluster_cmd) return run_cluster(points_file, cluster_opts);
    if (*seat_cmd) return run_seatplan(matrix_file, seat_opts, mds_tol);
    if (*bench_cmd) return run_bench(bench_ns, bench_dim, bench_k, bench_reps, bench_opts, bench_cmd->count("--out") > 0);
  } catch (const fskm::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
