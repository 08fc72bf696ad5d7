#include "fskm/seatplan.hpp"

#include <set>

#include <gtest/gtest.h>

#include "fskm/oracle.hpp"
#include "test_support.hpp"

using namespace fskm;

namespace {

GuestList numbered_guests(Index n) {
  std::vector<std::string> names;
  for (Index i = 0; i < n; ++i) names.push_back("guest" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  return GuestList(names);
}

// Pairs (i, j) seated at the same table.
std::set<std::pair<Index, Index>> co_seated(const std::vector<Index>& table_of_guest) {
  std::set<std::pair<Index, Index>> pairs;
  for (std::size_t i = 0; i < table_of_guest.size(); ++i)
    for (std::size_t j = i + 1; j < table_of_guest.size(); ++j)
      if (table_of_guest[i] == table_of_guest[j]) pairs.emplace(i, j);
  return pairs;
}

void expect_valid(const SeatingPlan& plan, const GuestList& guests, const SizeSpec& sizes) {
  ASSERT_EQ(static_cast<Index>(plan.tables.size()), sizes.k());
  std::multiset<std::string> seated;
  for (Index t = 0; t < sizes.k(); ++t) {
    const auto& table = plan.tables[static_cast<std::size_t>(t)];
    EXPECT_EQ(static_cast<Index>(table.size()), sizes[t]);
    EXPECT_TRUE(std::is_sorted(table.begin(), table.end()));
    seated.insert(table.begin(), table.end());
  }
  EXPECT_EQ(seated, std::multiset<std::string>(guests.names().begin(), guests.names().end()));
}

}  // namespace

TEST(GuestList, TrimsAndRejectsDuplicates) {
  const GuestList guests({" alice ", "bob"});
  EXPECT_EQ(guests[0], "alice");
  EXPECT_THROW(GuestList({"alice", " alice"}), InvalidInput);
  EXPECT_THROW(GuestList({"alice", "  "}), InvalidInput);
}

TEST(Seatplan, TwoClosePairs) {
  Eigen::Matrix4d d;
  d << 0, 1, 9, 9,
       1, 0, 9, 9,
       9, 9, 0, 1,
       9, 9, 1, 0;
  const GuestList guests({"ann", "bea", "cid", "dan"});
  SeatplanConfig config;
  config.run.restarts = 20;
  const auto plan = fskm::plan(d, guests, SizeSpec({2, 2}), config);
  expect_valid(plan, guests, SizeSpec({2, 2}));
  EXPECT_EQ(plan.table_of_guest[0], plan.table_of_guest[1]);
  EXPECT_EQ(plan.table_of_guest[2], plan.table_of_guest[3]);
  EXPECT_NE(plan.table_of_guest[0], plan.table_of_guest[2]);
}

TEST(Seatplan, SingletonTables) {
  Eigen::Matrix2d d;
  d << 0, 4,
       4, 0;
  const GuestList guests({"x", "y"});
  const auto plan = fskm::plan(d, guests, SizeSpec({1, 1}));
  expect_valid(plan, guests, SizeSpec({1, 1}));
  EXPECT_EQ(plan.mse, 0.0);
}

TEST(Seatplan, TwoTrianglesMatchExhaustiveSplit) {
  PointSet source(6, 2);
  source << 0, 0,
            5, 5,
            1, 0,
            5, 6,
            0, 1,
            6, 5;
  const auto d = pairwise_distances(source);
  const auto guests = numbered_guests(6);
  const SizeSpec sizes({3, 3});
  const auto plan = fskm::plan(d, guests, sizes);
  expect_valid(plan, guests, sizes);

  const auto best = oracle::best_balanced_partition(embed(d).points, sizes);
  EXPECT_NEAR(plan.mse, best.mse, 1e-9);
  EXPECT_EQ(co_seated(plan.table_of_guest), co_seated(best.partition));
}

TEST(Seatplan, PartyOfTwentyTwo) {
  std::mt19937_64 rng(2015);
  Eigen::MatrixXd d = test_support::random_matrix(22, 22, rng, 0, 10);
  d = ((d + d.transpose()) / 2).eval();
  d.diagonal().setZero();
  const auto guests = numbered_guests(22);
  const SizeSpec sizes({4, 4, 5, 6, 3});
  SeatplanConfig config;
  ASSERT_EQ(config.run.restarts, 1000);
  const auto plan = fskm::plan(d, guests, sizes, config);
  expect_valid(plan, guests, sizes);
  EXPECT_EQ(plan.restarts, 1000);
  EXPECT_LE(plan.embedding_dimension, 21);

  const auto again = fskm::plan(d, guests, sizes, config);
  EXPECT_EQ(again.tables, plan.tables);
  EXPECT_EQ(again.mse, plan.mse);
}

TEST(Seatplan, DimensionMismatches) {
  const Eigen::MatrixXd d = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
  EXPECT_THROW(fskm::plan(d, GuestList({"a", "b"}), SizeSpec({1, 1})), InvalidInput);
  EXPECT_THROW(fskm::plan(d, GuestList({"a", "b", "c"}), SizeSpec({1, 1})), InvalidInput);
  EXPECT_THROW(fskm::plan(Eigen::MatrixXd::Zero(3, 3), GuestList({"a", "b", "c"}), SizeSpec({2, 1})),
               DegenerateEmbedding);
}

TEST(SeatplanProperty, PermutingGuestsKeepsOptimalCoSeating) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 6;
    const auto source = test_support::random_matrix(n, 2, rng, -3, 3);
    const auto d = pairwise_distances(source);
    const SizeSpec sizes({3, 3});
    const auto guests = numbered_guests(n);

    std::vector<Index> perm(n);
    std::iota(perm.begin(), perm.end(), Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const Eigen::MatrixXd permuted_d = d(perm, perm);
    std::vector<std::string> permuted_names;
    for (const auto p : perm) permuted_names.push_back(guests[p]);

    SeatplanConfig config;
    config.run.restarts = 200;
    const auto base = fskm::plan(d, guests, sizes, config);
    const auto moved = fskm::plan(permuted_d, GuestList(permuted_names), sizes, config);

    // Map the permuted plan back to original guest indices.
    std::vector<Index> mapped(n);
    for (Index i = 0; i < n; ++i) mapped[perm[i]] = moved.table_of_guest[i];
    const auto best = oracle::best_balanced_partition(embed(d).points, sizes);
    ASSERT_NEAR(base.mse, best.mse, 1e-9);
    ASSERT_NEAR(moved.mse, best.mse, 1e-9);
    ASSERT_NEAR(compute_mse(embed(d).points, mapped, update_step(embed(d).points, mapped, 2)), best.mse, 1e-9);
  }
}
