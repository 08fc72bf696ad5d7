#pragma once

#include <iosfwd>
#include <string>

#include "fskm/errors.hpp"
#include "fskm/fixed_kmeans.hpp"
#include "fskm/seatplan.hpp"

namespace fskm::io {

/// Malformed input file. what() reads "<source>:<line>: <problem>".
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& problem);
};

/// One point per line; coordinates separated by commas and/or whitespace.
/// Blank lines and text after '#' are ignored. Every point needs the same dimension.
PointSet parse_points(std::istream& in, const std::string& source);
PointSet load_points(const std::string& path);

/// "4,4,5,6,3" -> SizeSpec.
SizeSpec parse_sizes(const std::string& text);

struct CompatibilityMatrix {
  GuestList guests;
  DissimilarityMatrix distances;
};

/// CSV with a header row of guest names (first cell is ignored) followed by one
/// row per guest: its name, then its distances in header order. Row names must
/// repeat the header names in the same order.
CompatibilityMatrix parse_compatibility_csv(std::istream& in, const std::string& source);
CompatibilityMatrix load_compatibility_csv(const std::string& path);

void write_partition(std::ostream& out, const Partition& partition);
void write_centroids(std::ostream& out, const Eigen::MatrixXd& centroids);
std::string clustering_summary_json(const ClusteringResult& result, const SizeSpec& sizes, Index dim,
                                    std::uint64_t seed);

void write_plan_text(std::ostream& out, const SeatingPlan& plan);
std::string plan_json(const SeatingPlan& plan);

}  // namespace fskm::io
