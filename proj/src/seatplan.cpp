#include "fskm/seatplan.hpp"

#include <algorithm>
#include <set>

namespace fskm {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

GuestList::GuestList(std::vector<std::string> names) {
  std::set<std::string> seen;
  names_.reserve(names.size());
  for (auto& raw : names) {
    auto name = trim(raw);
    if (name.empty()) throw InvalidInput("guest " + std::to_string(names_.size()) + " has an empty name");
    if (!seen.insert(name).second) throw InvalidInput("duplicate guest name '" + name + "'");
    names_.push_back(std::move(name));
  }
}

SeatingPlan plan(const DissimilarityMatrix& d, const GuestList& guests, const SizeSpec& tables,
                 const SeatplanConfig& config) {
  if (d.rows() != guests.size() || d.cols() != guests.size()) {
    throw InvalidInput("matrix is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + " but there are " +
                       std::to_string(guests.size()) + " guests");
  }
  if (tables.total() != guests.size()) {
    throw InvalidInput("sizes sum " + std::to_string(tables.total()) + " != n " + std::to_string(guests.size()));
  }

  const Embedding embedding = embed(d, config.mds_tol);
  const ClusteringResult clustering = cluster_multi_restart(embedding.points, tables, config.run);

  SeatingPlan out;
  out.tables.resize(static_cast<std::size_t>(tables.k()));
  for (Index i = 0; i < guests.size(); ++i) {
    out.tables[static_cast<std::size_t>(clustering.partition[static_cast<std::size_t>(i)])].push_back(guests[i]);
  }
  for (auto& table : out.tables) std::sort(table.begin(), table.end());
  out.table_of_guest = clustering.partition;
  out.mse = clustering.mse;
  out.restarts = clustering.restarts_used;
  out.seed = config.run.seed;
  out.embedding_dimension = embedding.dimension();
  out.discarded_negative_mass = embedding.discarded_negative_mass;
  return out;
}

}  // namespace fskm
