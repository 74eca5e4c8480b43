#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace levyps::spatial {

// Probabilists' Hermite polynomial He_k(y) by the three-term recurrence
// He_{k+1} = y He_k - k He_{k-1}; k <= 30.
double hermite(unsigned k, double y);

using MultiIndex = std::vector<unsigned>;

unsigned degree(const MultiIndex& alpha) noexcept;
double factorial(const MultiIndex& alpha) noexcept;
double power(std::span<const double> z, const MultiIndex& alpha) noexcept;

// All multi-indices of length n and total degree <= d, graded by degree and
// reverse-lexicographic within a degree: (0,0) (1,0) (0,1) (2,0) (1,1) (0,2)...
std::vector<MultiIndex> multi_indices(std::size_t n, unsigned d);

// H_alpha(y) = prod_i He_{alpha_i}(y_i)
double hermite(const MultiIndex& alpha, std::span<const double> y);

// exp(<z, y> - |z|^2 / 2)
double generating_function(std::span<const double> z, std::span<const double> y);
// sum_{|alpha| <= d} z^alpha / alpha! H_alpha(y)
double generating_series(std::span<const double> z, std::span<const double> y, unsigned d);

struct SimplexProbes {};  // the multi-indices themselves, as vectors
struct ExplicitProbes {
  std::vector<std::vector<double>> vectors;
};
using ProbeRule = std::variant<SimplexProbes, ExplicitProbes>;

// Linear system A H = g with A_{k,beta} = z_k^beta / beta!, relating the
// Hermite polynomials of degree <= d to exponential probes z_k.
struct HermiteSystem {
  std::size_t n = 0;
  unsigned d = 0;
  std::vector<MultiIndex> indices;
  Eigen::MatrixXd probes;  // one probe per row
  Eigen::MatrixXd A;
  Eigen::MatrixXd A_inverse;
  double condition = 0.0;  // 2-norm condition number of A
  int perturbation_retries = 0;
};

// Throws NumericalError with diagnostics when A stays singular after five
// perturbed retries.
HermiteSystem build_hermite_system(std::size_t n, unsigned d, const ProbeRule& rule = {});

// Degree-<=d parts of the probe exponentials exp(<z_k, y> - |z_k|^2/2),
// extracted from exponential evaluations at complex probe scalings
// s = e^{2 pi i j / nodes} (discrete Cauchy integral in s).
Eigen::VectorXd truncated_probe_values(const HermiteSystem& system, std::span<const double> y,
                                       int nodes = 64);

// A^{-1} g: Hermite values H_beta(y) in system.indices order.
Eigen::VectorXd reconstruct(const HermiteSystem& system, const Eigen::VectorXd& probe_values);

}  // namespace levyps::spatial
