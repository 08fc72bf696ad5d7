#pragma once

#include <string>
#include <vector>

#include "fskm/fixed_kmeans.hpp"
#include "fskm/mds.hpp"

namespace fskm {

/// n distinct guest labels, trimmed of surrounding whitespace.
class GuestList {
 public:
  GuestList() = default;
  explicit GuestList(std::vector<std::string> names);

  Index size() const { return static_cast<Index>(names_.size()); }
  const std::string& operator[](Index i) const { return names_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

struct SeatplanConfig {
  RunConfig run{.seed = RunConfig::kDefaultSeed, .restarts = 1000};
  double mds_tol = 1e-9;
};

struct SeatingPlan {
  std::vector<std::vector<std::string>> tables;  // in size order; names sorted within a table
  std::vector<Index> table_of_guest;             // guest index -> table index
  double mse = 0.0;
  int restarts = 0;
  std::uint64_t seed = 0;
  Index embedding_dimension = 0;
  double discarded_negative_mass = 0.0;
};

/// Compatibility matrix -> classical MDS -> fixed-size k-means over table sizes.
SeatingPlan plan(const DissimilarityMatrix& d, const GuestList& guests, const SizeSpec& tables,
                 const SeatplanConfig& config = {});

}  // namespace fskm
