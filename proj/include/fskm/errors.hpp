#pragma once

#include <stdexcept>
#include <string>

namespace fskm {

/// Input violates a documented precondition (shape, finiteness, symmetry, size sums).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive routine refused to run because the search space is too large.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// MDS found no eigenvalue above the retention threshold.
class DegenerateEmbedding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fskm
