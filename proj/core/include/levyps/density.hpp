#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "levyps/functional.hpp"
#include "levyps/simulate.hpp"
#include "levyps/units.hpp"

namespace levyps::spatial {

struct ResidualCurve {
  std::vector<std::size_t> budgets;
  // ||target - projection|| / ||target|| under the empirical law of L_t.
  std::vector<double> residuals;
  // Set when the design was rank deficient and ridge penalty 1e-10 was used.
  bool regularized = false;
};

// Least-squares fit of target(L_t) on the first J dictionary exponentials
// exp(i<phi_j, L_t>) for each J in budgets (increasing, <= dictionary size).
// Prefix budgets are nested, so the curve is non-increasing.
ResidualCurve exponential_density_residual(const PathView& view, double t,
                                           const units::PathFunctional& target,
                                           std::span<const FiniteFunctional> dictionary,
                                           std::span<const std::size_t> budgets);

// 0, +w e_n, -w e_n, +2w e_n, -2w e_n, ... (count entries).
std::vector<FiniteFunctional> axis_lattice(std::size_t coordinate, double spacing,
                                           std::size_t count);

}  // namespace levyps::spatial
