#include "fskm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fskm::io {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_double(const std::string& token, double& value) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (const char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell.push_back(ch);
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& problem)
    : InvalidInput(source + ":" + std::to_string(line) + ": " + problem) {}

PointSet parse_points(std::istream& in, const std::string& source) {
  std::vector<double> coords;
  Index dim = -1;
  Index rows = 0;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream fields(line);
    std::string token;
    Index count = 0;
    while (fields >> token) {
      double value = 0.0;
      if (!parse_double(token, value)) throw ParseError(source, line_no, "expected a finite number, got '" + token + "'");
      coords.push_back(value);
      ++count;
    }
    if (count == 0) continue;
    if (dim < 0) dim = count;
    if (count != dim) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError(source, 0, "expected at least one point");
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(coords.data(), rows,
                                                                                                  dim);
}

PointSet load_points(const std::string& path) {
  auto in = open_input(path);
  return parse_points(in, path);
}

SizeSpec parse_sizes(const std::string& text) {
  std::vector<Index> sizes;
  std::istringstream fields(text);
  std::string token;
  while (std::getline(fields, token, ',')) {
    token = trim(token);
    Index value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value < 1) {
      throw InvalidInput("sizes: expected positive integers separated by commas, got '" + text + "'");
    }
    sizes.push_back(value);
  }
  return SizeSpec(std::move(sizes));
}

CompatibilityMatrix parse_compatibility_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto next_row = [&](std::vector<std::string>& cells) {
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      cells = split_csv(line);
      return true;
    }
    return false;
  };

  std::vector<std::string> header;
  if (!next_row(header)) throw ParseError(source, 0, "expected a header row of guest names");
  std::vector<std::string> names(header.begin() + 1, header.end());
  const auto n = static_cast<Index>(names.size());
  if (n == 0) throw ParseError(source, line_no, "expected at least one guest name in the header");
  GuestList guests;
  try {
    guests = GuestList(names);
  } catch (const InvalidInput& e) {
    throw ParseError(source, line_no, e.what());
  }

  DissimilarityMatrix d(n, n);
  std::vector<std::string> cells;
  for (Index i = 0; i < n; ++i) {
    if (!next_row(cells)) throw ParseError(source, line_no + 1, "expected a row for guest '" + guests[i] + "'");
    if (static_cast<Index>(cells.size()) != n + 1) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(n + 1) + " cells, got " + std::to_string(cells.size()));
    }
    if (cells[0] != guests[i]) {
      throw ParseError(source, line_no, "expected row label '" + guests[i] + "', got '" + cells[0] + "'");
    }
    for (Index j = 0; j < n; ++j) {
      double value = 0.0;
      const auto& cell = cells[static_cast<std::size_t>(j + 1)];
      if (!parse_double(cell, value)) {
        throw ParseError(source, line_no, "expected a finite number in column '" + guests[j] + "', got '" + cell + "'");
      }
      if (value < 0.0) throw ParseError(source, line_no, "distance to '" + guests[j] + "' is negative");
      d(i, j) = value;
    }
    if (d(i, i) != 0.0) throw ParseError(source, line_no, "diagonal entry for '" + guests[i] + "' must be 0");
  }
  if (next_row(cells)) throw ParseError(source, line_no, "expected end of file after " + std::to_string(n) + " rows");

  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(d(i, j) - d(j, i)) > 1e-9) {
        throw ParseError(source, static_cast<std::size_t>(i) + 2,
                         "asymmetric cell pair ('" + guests[i] + "', '" + guests[j] + "') = " + format_double(d(i, j)) +
                             " vs ('" + guests[j] + "', '" + guests[i] + "') = " + format_double(d(j, i)));
      }
    }
  }
  return {std::move(guests), std::move(d)};
}

CompatibilityMatrix load_compatibility_csv(const std::string& path) {
  auto in = open_input(path);
  return parse_compatibility_csv(in, path);
}

void write_partition(std::ostream& out, const Partition& partition) {
  out << "# point cluster\n";
  for (std::size_t i = 0; i < partition.size(); ++i) out << i << ' ' << partition[i] << '\n';
}

void write_centroids(std::ostream& out, const Eigen::MatrixXd& centroids) {
  for (Index j = 0; j < centroids.rows(); ++j) {
    for (Index c = 0; c < centroids.cols(); ++c) out << (c ? " " : "") << format_double(centroids(j, c));
    out << '\n';
  }
}

std::string clustering_summary_json(const ClusteringResult& result, const SizeSpec& sizes, Index dim,
                                    std::uint64_t seed) {
  nlohmann::ordered_json doc;
  doc["n"] = sizes.total();
  doc["dim"] = dim;
  doc["k"] = sizes.k();
  doc["sizes"] = sizes.sizes();
  doc["mse"] = result.mse;
  doc["iterations"] = result.iterations;
  doc["converged"] = result.converged;
  doc["restarts"] = result.restarts_used;
  doc["best_restart"] = result.best_restart;
  doc["seed"] = seed;
  return doc.dump(2) + "\n";
}

void write_plan_text(std::ostream& out, const SeatingPlan& plan) {
  for (std::size_t t = 0; t < plan.tables.size(); ++t) {
    out << "Table " << t + 1 << " (" << plan.tables[t].size() << " seats)\n";
    for (const auto& name : plan.tables[t]) out << "  " << name << '\n';
    out << '\n';
  }
  out << "mse " << format_double(plan.mse) << '\n';
  out << "embedding dimension " << plan.embedding_dimension << '\n';
  out << "restarts " << plan.restarts << '\n';
  out << "seed " << plan.seed << '\n';
}

std::string plan_json(const SeatingPlan& plan) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < plan.tables.size(); ++t) {
    tables.push_back({{"table", t + 1}, {"guests", plan.tables[t]}});
  }
  doc["tables"] = std::move(tables);
  doc["mse"] = plan.mse;
  doc["embedding_dimension"] = plan.embedding_dimension;
  doc["discarded_negative_mass"] = plan.discarded_negative_mass;
  doc["restarts"] = plan.restarts;
  doc["seed"] = plan.seed;
  return doc.dump(2) + "\n";
}

}  // namespace fskm::io
