#include "levyps/orthogonality.hpp"

#include <cmath>
#include <vector>

#include "levyps/errors.hpp"

namespace levyps::spatial {

CenteredIndicatorFactor::CenteredIndicatorFactor(const skellam::LambdaProfile& profile,
                                                 std::size_t n, double t)
    : n_(n), p_(skellam::prob_zero(profile, n, t)) {}

Complex orthogonal_factor(const skellam::LambdaProfile& profile, std::size_t n, double t,
                          double f_n) {
  const double p = skellam::prob_zero(profile, n, t);
  return p * (1.0 - skellam::coordinate_charfn(profile, n, t, f_n));
}

OrthogonalityResult orthogonality_check(const skellam::LambdaProfile& profile,
                                        const PathEnsemble& ensemble, double t,
                                        const FiniteFunctional& f) {
  const std::size_t K = profile.dim();
  require_within(f, K, "orthogonality_check");
  if (f.size() == K) {
    throw PreconditionError(
        "orthogonality_check: f must vanish on some coordinate n <= K; the truncated product "
        "of orthogonal factors is only guaranteed to vanish through such a coordinate");
  }
  const auto* model = ensemble.model().get_if<SkellamFamily>();
  if (!model || model->lambdas() != profile.lambdas()) {
    throw PreconditionError("orthogonality_check: ensemble is not the profile's Skellam model");
  }

  OrthogonalityResult out;
  Complex product(1.0, 0.0);
  out.norm2_analytic = 1.0;
  std::vector<CenteredIndicatorFactor> factors;
  for (std::size_t n = 1; n <= K; ++n) {
    factors.emplace_back(profile, n, t);
    product *= orthogonal_factor(profile, n, t, f[n]);
    out.norm2_analytic *= factors.back().second_moment();
  }
  out.analytic = std::conj(product);

  const auto view = ensemble.view();
  const std::size_t j = view.index_of(t);
  const std::size_t M = ensemble.samples();
  std::vector<Complex> cross(M);
  std::vector<std::vector<double>> squares(K, std::vector<double>(M));
  for (std::size_t s = 0; s < M; ++s) {
    const auto x = ensemble.position(s, j);
    double psi = 1.0;
    for (std::size_t n = 0; n < K; ++n) {
      const double v = factors[n](x[n]);
      psi *= v;
      squares[n][s] = v * v;
    }
    const double angle = f.pair(x);
    cross[s] = psi * Complex(std::cos(angle), -std::sin(angle));
  }
  out.mc = complex_mean(cross);

  // psi_K^2 itself has relative variance near prod 1/(1 - p_n), far beyond
  // any feasible M, so the norm is estimated factor by factor.  Coordinates
  // are independent, which makes the product of means unbiased.
  out.norm2_mc = {1.0, 0.0};
  double rel_var = 0.0;
  for (const auto& column : squares) {
    const auto m = real_mean(column);
    out.norm2_mc.mean *= m.mean;
    rel_var += (m.std_error / m.mean) * (m.std_error / m.mean);
  }
  out.norm2_mc.std_error = out.norm2_mc.mean * std::sqrt(rel_var);
  return out;
}

}  // namespace levyps::spatial
