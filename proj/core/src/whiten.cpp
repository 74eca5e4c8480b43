#include "levyps/whiten.hpp"

#include <cmath>
#include <sstream>

#include "levyps/errors.hpp"

namespace levyps::spatial {

Eigen::MatrixXd covariance_matrix(const GaussianDiagonal& model,
                                  std::span<const FiniteFunctional> psis) {
  const auto n = static_cast<Eigen::Index>(psis.size());
  Eigen::MatrixXd sigma(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    require_within(psis[i], model.dim(), "covariance_matrix");
    for (Eigen::Index j = 0; j < n; ++j) {
      double acc = 0.0;
      for (const auto& [k, v] : psis[i]) acc += model.variances()[k - 1] * v * psis[j][k];
      sigma(i, j) = acc;
    }
  }
  return sigma;
}

Whitener::Whitener(const Eigen::MatrixXd& sigma, double t) : t_(t) {
  if (!(t > 0.0)) throw PreconditionError("Whitener: t must be positive");
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
    throw PreconditionError("Whitener: covariance must be square and non-empty");
  }
  if (!sigma.isApprox(sigma.transpose(), 1e-12)) {
    throw NumericalError("Whitener: covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  const auto& values = eig.eigenvalues();
  const double largest = values.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values(i) > 1e-14 * largest)) {
      std::ostringstream msg;
      msg << "Whitener: covariance not positive definite, eigenvalue " << i << " = "
          << values(i);
      throw NumericalError(msg.str());
    }
  }
  const auto& V = eig.eigenvectors();
  sqrt_ = V * values.cwiseSqrt().asDiagonal() * V.transpose();
  inv_sqrt_ = V * values.cwiseSqrt().cwiseInverse().asDiagonal() * V.transpose();
}

Eigen::VectorXd Whitener::whiten(const Eigen::VectorXd& y) const {
  return inv_sqrt_ * y / std::sqrt(t_);
}

Eigen::VectorXd Whitener::lift(const Eigen::VectorXd& z) const {
  return std::sqrt(t_) * (sqrt_ * z);
}

}  // namespace levyps::spatial
