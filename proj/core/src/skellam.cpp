#include "levyps/skellam.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "levyps/errors.hpp"

namespace levyps::skellam {
namespace {

// sum_j (x^2/4)^j nu! / (j! (j+nu)!), so that I_nu(x) = (x/2)^nu / nu! * S.
double reduced_series(unsigned nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (unsigned j = 1; j < 10000; ++j) {
    term *= q / (static_cast<double>(j) * static_cast<double>(j + nu));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double log_poisson(double mu, long k) {
  return -mu + static_cast<double>(k) * std::log(mu) - std::lgamma(static_cast<double>(k) + 1.0);
}

}  // namespace

double bessel_i(unsigned nu, double x) {
  if (x < 0.0) throw PreconditionError("bessel_i: x must be non-negative");
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  return std::exp(log_bessel_i(nu, x));
}

double log_bessel_i(unsigned nu, double x) {
  if (!(x > 0.0)) throw PreconditionError("log_bessel_i: x must be positive");
  return static_cast<double>(nu) * std::log(0.5 * x) - std::lgamma(nu + 1.0) +
         std::log(reduced_series(nu, x));
}

double skellam_pmf(SkellamParams p, long k) {
  if (!(p.mu1 >= 0.0) || !(p.mu2 >= 0.0) || !std::isfinite(p.mu1) || !std::isfinite(p.mu2)) {
    throw PreconditionError("skellam_pmf: rates must be finite and non-negative");
  }
  if (p.mu1 == 0.0 && p.mu2 == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p.mu2 == 0.0) return k < 0 ? 0.0 : std::exp(log_poisson(p.mu1, k));
  if (p.mu1 == 0.0) return k > 0 ? 0.0 : std::exp(log_poisson(p.mu2, -k));
  const unsigned order = static_cast<unsigned>(k < 0 ? -k : k);
  const double log_pmf = -(p.mu1 + p.mu2) +
                         0.5 * static_cast<double>(k) * (std::log(p.mu1) - std::log(p.mu2)) +
                         log_bessel_i(order, 2.0 * std::sqrt(p.mu1 * p.mu2));
  return std::exp(log_pmf);
}

LambdaProfile::LambdaProfile(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw PreconditionError("LambdaProfile: K must be >= 1");
  for (double l : lambdas_) {
    if (!(l >= 0.0 && l <= 1.0)) throw PreconditionError("LambdaProfile: lambda outside [0,1]");
  }
}

double LambdaProfile::alpha(std::size_t n) noexcept {
  return std::ldexp(1.0, -static_cast<int>(n));
}

SkellamParams LambdaProfile::params(std::size_t n, double t) const {
  const double a = alpha(n);
  const double l = lambda(n);
  return {a * l * t, a * (1.0 - l) * t};
}

double prob_zero(const LambdaProfile& profile, std::size_t n, double t) {
  if (n == 0 || n > profile.dim()) throw PreconditionError("prob_zero: coordinate out of range");
  if (!(t > 0.0)) throw PreconditionError("prob_zero: t must be positive");
  return skellam_pmf(profile.params(n, t), 0);
}

Complex psi_lambda(const LambdaProfile& profile, const FiniteFunctional& phi) {
  require_within(phi, profile.dim(), "psi_lambda");
  double re = 0.0;
  double im = 0.0;
  for (const auto& [n, value] : phi) {
    const double a = LambdaProfile::alpha(n);
    re += a * (std::cos(value) - 1.0);
    im += a * (2.0 * profile.lambda(n) - 1.0) * std::sin(value);
  }
  return {re, im};
}

Complex coordinate_charfn(const LambdaProfile& profile, std::size_t n, double t, double f) {
  if (f == 0.0) return {1.0, 0.0};
  return std::exp(t * psi_lambda(profile, FiniteFunctional::axis(n, f)));
}

Complex coordinate_exponent_by_summation(const LambdaProfile& profile, std::size_t n,
                                         double phi, double t, long kmax) {
  if (n == 0 || n > profile.dim()) {
    throw PreconditionError("coordinate_exponent_by_summation: coordinate out of range");
  }
  const auto p = profile.params(n, t);
  Complex acc(0.0, 0.0);
  // Smallest terms first.
  for (long m = kmax; m >= 1; --m) {
    for (long k : {m, -m}) {
      const double angle = phi * static_cast<double>(k);
      acc += skellam_pmf(p, k) * Complex(std::cos(angle), std::sin(angle));
    }
  }
  acc += skellam_pmf(p, 0);
  return std::log(acc) / t;
}

Complex unit_inner_product(const LambdaProfile& profile, const FiniteFunctional& f,
                           const FiniteFunctional& g, double t) {
  if (!(t > 0.0)) throw PreconditionError("unit_inner_product: t must be positive");
  return std::exp(t * psi_lambda(profile, f - g));
}

Discrimination discriminate(const LambdaProfile& a, const LambdaProfile& b,
                            std::size_t grid_points_per_coordinate) {
  if (a.dim() != b.dim()) throw PreconditionError("discriminate: profiles differ in K");
  if (grid_points_per_coordinate == 0) throw PreconditionError("discriminate: empty grid");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  Discrimination out;
  out.resolution = 10.0 * eps;
  out.gaps.assign(a.dim(), 0.0);
  for (std::size_t n = 1; n <= a.dim(); ++n) {
    if (LambdaProfile::alpha(n) > out.resolution) out.resolvable_coordinates = n;
    double gap = 0.0;
    for (std::size_t m = 0; m < grid_points_per_coordinate; ++m) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(m) /
                         static_cast<double>(grid_points_per_coordinate);
      const auto e = FiniteFunctional::axis(n, phi);
      gap = std::max(gap, std::abs(psi_lambda(a, e) - psi_lambda(b, e)));
    }
    out.gaps[n - 1] = gap;
    out.max_gap = std::max(out.max_gap, gap);
    if (!out.coordinate && gap > 10.0 * eps * LambdaProfile::alpha(n)) out.coordinate = n;
  }
  return out;
}

}  // namespace levyps::skellam
