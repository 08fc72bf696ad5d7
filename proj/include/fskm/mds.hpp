#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "fskm/errors.hpp"

namespace fskm {

template <typename Scalar>
struct SymmetricEigen {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;                // descending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;  // column i pairs with eigenvalues(i)
};

namespace detail {

template <typename Derived>
void require_symmetric(const Eigen::MatrixBase<Derived>& m, double tol, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(msg.str());
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) {
        std::ostringstream msg;
        msg << what << " entry (" << i << ", " << j << ") is not finite";
        throw InvalidInput(msg.str());
      }
    }
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol) {
        std::ostringstream msg;
        msg << what << " is not symmetric: entry (" << i << ", " << j << ") = " << m(i, j) << " but (" << j
            << ", " << i << ") = " << m(j, i);
        throw InvalidInput(msg.str());
      }
    }
  }
}

}  // namespace detail

/// Full spectral decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps rotate away every off-diagonal pair in row order until all
/// off-diagonal magnitudes fall below 1e-12 times the Frobenius norm.
/// Eigenvalues come back in descending order; each eigenvector is signed so
/// that its first nonzero component is positive.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> symmetric_eigendecompose(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  constexpr int kMaxSweeps = 100;

  detail::require_symmetric(input, 1e-9, "matrix");
  const Eigen::Index n = input.rows();
  // Symmetrize so rotations act on an exactly symmetric matrix.
  Matrix a = (input + input.transpose()) / Scalar(2);
  Matrix v = Matrix::Identity(n, n);
  const Scalar threshold = Scalar(1e-12) * a.norm();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    Scalar off = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= threshold) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        // Rotation angle that zeroes a(p, q); t = tan(theta), smaller root.
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const Scalar c = Scalar(1) / std::sqrt(t * t + 1);
        const Scalar s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = Scalar(0);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index lhs, Eigen::Index rhs) { return a(lhs, lhs) > a(rhs, rhs); });

  SymmetricEigen<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = a(order[i], order[i]);
    auto column = out.eigenvectors.col(i);
    column = v.col(order[i]);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (column(k) != Scalar(0)) {
        if (column(k) < Scalar(0)) column = -column;
        break;
      }
    }
  }
  return out;
}

/// Dissimilarities between n objects: symmetric, zero diagonal, nonnegative, finite.
using DissimilarityMatrix = Eigen::MatrixXd;

/// Validates a dissimilarity matrix, naming the first violating cell.
void validate_dissimilarity(const DissimilarityMatrix& d);

struct Embedding {
  Eigen::MatrixXd points;        // n x m, one row per object, centered
  Eigen::VectorXd eigenvalues;   // retained spectrum, descending
  double discarded_negative_mass = 0.0;  // sum of |lambda| over negative eigenvalues
  Eigen::Index dimension() const { return points.cols(); }
};

/// Classical (Torgerson) scaling: double-center the squared dissimilarities
/// and keep eigenpairs whose eigenvalue exceeds tol times the largest.
Embedding embed(const DissimilarityMatrix& d, double tol = 1e-9);

/// Euclidean distances between all pairs of rows.
Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& points);

}  // namespace fskm
