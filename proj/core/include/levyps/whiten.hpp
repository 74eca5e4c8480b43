#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "levyps/functional.hpp"
#include "levyps/model.hpp"

namespace levyps::spatial {

// Sigma_ij = Q(psi_i, psi_j) for a diagonal Gaussian covariance.
Eigen::MatrixXd covariance_matrix(const GaussianDiagonal& model,
                                  std::span<const FiniteFunctional> psis);

// Change of variables to identity covariance:
//   ytilde = t^{-1/2} Sigma^{-1/2} y,  ztilde = t^{1/2} Sigma^{1/2} z,
// so <ztilde, ytilde> = <z, y>.
class Whitener {
 public:
  // Throws NumericalError naming the offending eigenvalue unless Sigma is
  // symmetric positive definite.
  Whitener(const Eigen::MatrixXd& sigma, double t);

  Eigen::VectorXd whiten(const Eigen::VectorXd& y) const;
  Eigen::VectorXd lift(const Eigen::VectorXd& z) const;

  const Eigen::MatrixXd& inv_sqrt() const noexcept { return inv_sqrt_; }
  const Eigen::MatrixXd& sqrt() const noexcept { return sqrt_; }

 private:
  Eigen::MatrixXd sqrt_;
  Eigen::MatrixXd inv_sqrt_;
  double t_;
};

}  // namespace levyps::spatial
