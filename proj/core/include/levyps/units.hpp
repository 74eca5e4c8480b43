#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "levyps/functional.hpp"
#include "levyps/model.hpp"
#include "levyps/simulate.hpp"

namespace levyps::units {

// Cameron-Martin direction h of a diagonal Gaussian model:
// |h|_H^2 = sum h_n^2 / q_n, dual representative hhat_n = h_n / q_n.
class CameronMartinVector {
 public:
  CameronMartinVector(std::vector<double> h, std::vector<double> variances);
  CameronMartinVector(std::vector<double> h, const GaussianDiagonal& model);

  std::size_t dim() const noexcept { return h_.size(); }
  const std::vector<double>& h() const noexcept { return h_; }
  const std::vector<double>& variances() const noexcept { return variances_; }
  const std::vector<double>& dual() const noexcept { return dual_; }
  double norm_h2() const noexcept { return norm_h2_; }

  CameronMartinVector scaled(double c) const;

 private:
  std::vector<double> h_;
  std::vector<double> variances_;
  std::vector<double> dual_;
  double norm_h2_ = 0.0;
};

struct ExponentialUnit {
  FiniteFunctional phi;
};
struct GaussianUnit {
  CameronMartinVector h;
};
struct ParityUnit {};

using UnitSpec = std::variant<ExponentialUnit, GaussianUnit, ParityUnit>;

const char* unit_kind(const UnitSpec& spec) noexcept;

// Throws PreconditionError when the unit is not defined for the model:
// Gaussian units need a centered GaussianDiagonal with the same variances,
// parity needs a BernoulliCompound arrival count.
void require_compatible(const UnitSpec& spec, const LevyModel& model);

// A function of the path at one time: (L_t, N_t) -> value.
using PathFunctional =
    std::function<Complex(std::span<const double> position, std::int64_t arrivals)>;

// u(t) as a path functional.  Exponential: exp(i<phi, L_t>); Gaussian:
// exp(<hhat, L_t> - t |h|^2/2); parity: (-1)^{N_t}.
PathFunctional unit_functional(const UnitSpec& spec, double t);

// Per-sample unit values at time t read through the view.
std::vector<Complex> eval_unit(const UnitSpec& spec, const PathView& view, double t);
std::vector<Complex> eval_unit(const UnitSpec& spec, const PathEnsemble& ensemble, double t);

// Per-sample values of an arbitrary path functional at time t.
std::vector<Complex> eval_functional(const PathFunctional& f, const PathView& view, double t);

// e^{t |h|^2 / 2}
double gaussian_unit_norm(const CameronMartinVector& h, double t);

struct FactorizationResult {
  double max_abs_error = 0.0;
  double max_magnitude = 0.0;  // max |u(s+t)|
  double relative() const noexcept {
    return max_magnitude > 0.0 ? max_abs_error / max_magnitude : max_abs_error;
  }
};

// max over samples of |u(s+t) - u(s) (u(t) o sigma_s)|.
FactorizationResult factorization_check(const UnitSpec& spec, const PathEnsemble& ensemble,
                                        double s, double t);

struct GapEstimate {
  double gap;
  double std_error;
};

using TestFunction = std::function<double(std::span<const double> position_at_s)>;

// For each bounded g: |mean[u(s+t) g(L_s)] - mean[u(s) g(L_s)]| with the
// standard error of the paired difference.
std::vector<GapEstimate> martingale_test(const CameronMartinVector& h,
                                         const PathEnsemble& ensemble, double s, double t,
                                         std::span<const TestFunction> test_fns);

struct IsometryResult {
  double lhs;  // mean |f (g o sigma_s)|^2
  double rhs;  // mean |f|^2 * mean |g o sigma_s|^2
  double std_error;
};

// f reads (L_s, N_s); g reads the shifted path at time t.
IsometryResult multiplication_isometry_check(const PathEnsemble& ensemble,
                                             const PathFunctional& f, const PathFunctional& g,
                                             double s, double t);

}  // namespace levyps::units
