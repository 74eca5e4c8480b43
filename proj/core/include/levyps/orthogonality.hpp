#pragma once

#include <cstddef>

#include "levyps/functional.hpp"
#include "levyps/simulate.hpp"
#include "levyps/skellam.hpp"

namespace levyps::spatial {

// 1 - p at x = 0 and -p elsewhere, p = P(X_{n,t} = 0): mean zero under the
// coordinate law, second moment p (1 - p).
class CenteredIndicatorFactor {
 public:
  CenteredIndicatorFactor(const skellam::LambdaProfile& profile, std::size_t n, double t);

  std::size_t coordinate() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  double operator()(double x) const noexcept { return x == 0.0 ? 1.0 - p_ : -p_; }
  double second_moment() const noexcept { return p_ * (1.0 - p_); }

 private:
  std::size_t n_;
  double p_;
};

// E[phi_n(X_{n,t}) exp(i f_n X_{n,t})] = p_n (1 - Phi_n(f_n)).
Complex orthogonal_factor(const skellam::LambdaProfile& profile, std::size_t n, double t,
                          double f_n);

struct OrthogonalityResult {
  // <psi_K, u_f(t)> = E[psi_K conj(u_f)] in closed form (conjugate of the
  // product of orthogonal factors).
  Complex analytic;
  MonteCarloEstimate mc;
  double norm2_analytic;  // prod p_n (1 - p_n)
  RealEstimate norm2_mc;  // product of per-factor sample second moments
};

// psi_K = prod_{n<=K} phi_n against the exponential unit u_f on a Skellam
// ensemble with the same profile.  Requires some coordinate n <= K with
// f_n = 0.
OrthogonalityResult orthogonality_check(const skellam::LambdaProfile& profile,
                                        const PathEnsemble& ensemble, double t,
                                        const FiniteFunctional& f);

}  // namespace levyps::spatial
