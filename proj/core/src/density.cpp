#include "levyps/density.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "levyps/errors.hpp"

namespace levyps::spatial {
namespace {

constexpr double kRidge = 1e-10;
constexpr double kRankTolerance = 1e-10;

Eigen::MatrixXcd design(const PathView& view, std::size_t j,
                        std::span<const FiniteFunctional> dictionary, std::size_t columns) {
  const auto M = static_cast<Eigen::Index>(view.samples());
  Eigen::MatrixXcd A(M, static_cast<Eigen::Index>(columns));
  std::vector<double> x(view.dim());
  for (Eigen::Index s = 0; s < M; ++s) {
    view.position(static_cast<std::size_t>(s), j, x);
    for (std::size_t c = 0; c < columns; ++c) {
      const double angle = dictionary[c].pair(x);
      A(s, static_cast<Eigen::Index>(c)) = std::complex<double>(std::cos(angle), std::sin(angle));
    }
  }
  return A;
}

}  // namespace

ResidualCurve exponential_density_residual(const PathView& view, double t,
                                           const units::PathFunctional& target,
                                           std::span<const FiniteFunctional> dictionary,
                                           std::span<const std::size_t> budgets) {
  if (budgets.empty()) throw PreconditionError("density residual: no budgets");
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (budgets[i] == 0 || budgets[i] > dictionary.size() ||
        (i > 0 && budgets[i] <= budgets[i - 1])) {
      throw PreconditionError("density residual: budgets must increase within the dictionary");
    }
  }
  for (const auto& phi : dictionary) require_within(phi, view.dim(), "density residual");

  const std::size_t j = view.index_of(t);
  const auto M = static_cast<Eigen::Index>(view.samples());
  const std::size_t columns = budgets.back();

  Eigen::VectorXcd y(M);
  {
    std::vector<double> x(view.dim());
    for (Eigen::Index s = 0; s < M; ++s) {
      view.position(static_cast<std::size_t>(s), j, x);
      y(s) = target(x, view.arrivals(static_cast<std::size_t>(s), j));
    }
  }
  const double y_norm = y.norm();
  const double scale = y_norm > 0.0 ? y_norm : 1.0;

  ResidualCurve curve;
  curve.budgets.assign(budgets.begin(), budgets.end());

  Eigen::MatrixXcd A = design(view, j, dictionary, columns);
  bool deficient = M < static_cast<Eigen::Index>(columns);
  if (!deficient) {
    // Unpivoted Householder QR keeps column order, so every prefix of Q^H y
    // yields the residual of the corresponding prefix fit.
    Eigen::HouseholderQR<Eigen::Ref<Eigen::MatrixXcd>> qr(A);
    const auto& R = qr.matrixQR();
    double rmax = 0.0;
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(columns); ++c) {
      rmax = std::max(rmax, std::abs(R(c, c)));
    }
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(columns); ++c) {
      if (std::abs(R(c, c)) <= kRankTolerance * rmax) deficient = true;
    }
    if (!deficient) {
      const Eigen::VectorXcd qy = qr.householderQ().adjoint() * y;
      // Tail energies: residual^2 for a prefix of J columns is sum_{i>=J} |qy_i|^2.
      std::vector<double> tail(static_cast<std::size_t>(M) + 1, 0.0);
      for (Eigen::Index i = M; i-- > 0;) {
        tail[static_cast<std::size_t>(i)] = tail[static_cast<std::size_t>(i) + 1] + std::norm(qy(i));
      }
      for (std::size_t J : budgets) curve.residuals.push_back(std::sqrt(tail[J]) / scale);
      return curve;
    }
    A = design(view, j, dictionary, columns);
  }

  curve.regularized = true;
  const double inv_m = 1.0 / static_cast<double>(M);
  for (std::size_t J : budgets) {
    const auto cols = static_cast<Eigen::Index>(J);
    const auto block = A.leftCols(cols);
    Eigen::MatrixXcd gram = (block.adjoint() * block) * inv_m;
    gram.diagonal().array() += kRidge;
    const Eigen::VectorXcd rhs = (block.adjoint() * y) * inv_m;
    const Eigen::VectorXcd beta = gram.ldlt().solve(rhs);
    curve.residuals.push_back((y - block * beta).norm() / scale);
  }
  return curve;
}

std::vector<FiniteFunctional> axis_lattice(std::size_t coordinate, double spacing,
                                           std::size_t count) {
  std::vector<FiniteFunctional> out;
  out.reserve(count);
  if (count > 0) out.emplace_back();
  for (std::size_t k = 1; out.size() < count; ++k) {
    out.push_back(FiniteFunctional::axis(coordinate, spacing * static_cast<double>(k)));
    if (out.size() < count) {
      out.push_back(FiniteFunctional::axis(coordinate, -spacing * static_cast<double>(k)));
    }
  }
  return out;
}

}  // namespace levyps::spatial
