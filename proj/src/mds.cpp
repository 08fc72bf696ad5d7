#include "fskm/mds.hpp"

namespace fskm {

void validate_dissimilarity(const DissimilarityMatrix& d) {
  if (d.rows() < 1) throw InvalidInput("dissimilarity matrix is empty");
  detail::require_symmetric(d, 1e-9, "dissimilarity matrix");
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0.0) {
      std::ostringstream msg;
      msg << "dissimilarity diagonal (" << i << ", " << i << ") = " << d(i, i) << ", expected 0";
      throw InvalidInput(msg.str());
    }
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (d(i, j) < 0.0) {
        std::ostringstream msg;
        msg << "dissimilarity (" << i << ", " << j << ") = " << d(i, j) << " is negative";
        throw InvalidInput(msg.str());
      }
    }
  }
}

Embedding embed(const DissimilarityMatrix& d, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("MDS tolerance must be positive");
  validate_dissimilarity(d);
  const Eigen::Index n = d.rows();

  const Eigen::MatrixXd squared = d.array().square().matrix();
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd gram = -0.5 * centering * squared * centering;

  const auto spectrum = symmetric_eigendecompose(gram);
  const double largest = spectrum.eigenvalues.size() > 0 ? spectrum.eigenvalues(0) : 0.0;
  if (!(largest > 1e-14 * squared.maxCoeff()) || largest <= 0.0) {
    throw DegenerateEmbedding("no positive eigenvalue: all objects coincide");
  }

  Eigen::Index keep = 0;
  while (keep < n - 1 && spectrum.eigenvalues(keep) > tol * largest) ++keep;
  keep = std::max<Eigen::Index>(keep, 1);

  Embedding out;
  out.eigenvalues = spectrum.eigenvalues.head(keep);
  out.points = spectrum.eigenvectors.leftCols(keep) * out.eigenvalues.cwiseSqrt().asDiagonal();
  out.discarded_negative_mass = -spectrum.eigenvalues.cwiseMin(0.0).sum();
  return out;
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) out(i, j) = out(j, i) = (points.row(i) - points.row(j)).norm();
  }
  return out;
}

}  // namespace fskm
