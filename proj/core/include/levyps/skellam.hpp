#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "levyps/functional.hpp"
#include "levyps/model.hpp"

namespace levyps::skellam {

// Law of N1 - N2 with N1 ~ Poisson(mu1), N2 ~ Poisson(mu2) independent.
struct SkellamParams {
  double mu1 = 0.0;
  double mu2 = 0.0;
};

// Modified Bessel function of the first kind I_nu(x), nu >= 0 integer, by
// its ascending series; the series stops once a term is below 1e-18 of the
// running sum.
double bessel_i(unsigned nu, double x);
// log I_nu(x) for x > 0, stable when I_nu underflows.
double log_bessel_i(unsigned nu, double x);

// e^{-(mu1+mu2)} (mu1/mu2)^{k/2} I_|k|(2 sqrt(mu1 mu2)), with the one-sided
// Poisson laws when either rate is 0.
double skellam_pmf(SkellamParams p, long k);

// lambda profile with dyadic weights alpha_n = 2^-n.
class LambdaProfile {
 public:
  explicit LambdaProfile(std::vector<double> lambdas);

  std::size_t dim() const noexcept { return lambdas_.size(); }
  double lambda(std::size_t n) const { return lambdas_.at(n - 1); }
  static double alpha(std::size_t n) noexcept;
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }

  // Rates of coordinate n over time t.
  SkellamParams params(std::size_t n, double t) const;
  SkellamFamily model() const { return SkellamFamily(lambdas_); }

  friend bool operator==(const LambdaProfile&, const LambdaProfile&) = default;

 private:
  std::vector<double> lambdas_;
};

// P(X_{n,t} = 0).
double prob_zero(const LambdaProfile& profile, std::size_t n, double t);

// sum_n alpha_n [(cos phi_n - 1) + i (2 lambda_n - 1) sin phi_n]
Complex psi_lambda(const LambdaProfile& profile, const FiniteFunctional& phi);

// Characteristic function of coordinate n at time t, E[exp(i f X_{n,t})].
Complex coordinate_charfn(const LambdaProfile& profile, std::size_t n, double t, double f);

// log(sum_{|k|<=kmax} pmf(k) e^{i phi k}) / t for coordinate n: the exponent
// recovered by direct pmf summation rather than from the closed form.
Complex coordinate_exponent_by_summation(const LambdaProfile& profile, std::size_t n,
                                         double phi, double t, long kmax = 60);

// <u_f(t), u_g(t)> = exp(t psi_lambda(f - g)).
Complex unit_inner_product(const LambdaProfile& profile, const FiniteFunctional& f,
                           const FiniteFunctional& g, double t);

struct Discrimination {
  double max_gap = 0.0;
  // First coordinate whose gap exceeds its detection threshold.
  std::optional<std::size_t> coordinate;
  // Gap achieved at each coordinate (index n-1).
  std::vector<double> gaps;
  // Absolute detection floor used at unit exponent scale (10 eps).
  double resolution = 0.0;
  // Number of leading coordinates whose weight 2^-n exceeds the floor.
  std::size_t resolvable_coordinates = 0;
};

// Scans single-coordinate functionals phi e_n over a uniform grid of [0, 2pi)
// and reports the largest |Psi_a - Psi_b|.
Discrimination discriminate(const LambdaProfile& a, const LambdaProfile& b,
                            std::size_t grid_points_per_coordinate);

}  // namespace levyps::skellam
