#include "levyps/experiment/suites.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "levyps/density.hpp"
#include "levyps/errors.hpp"
#include "levyps/hermite.hpp"
#include "levyps/orthogonality.hpp"
#include "levyps/rng.hpp"
#include "levyps/simulate.hpp"
#include "levyps/skellam.hpp"
#include "levyps/units.hpp"
#include "levyps/whiten.hpp"

namespace levyps::experiment {
namespace {

constexpr double kPi = std::numbers::pi;

// Stream ids for auxiliary randomness (test functionals, probe points);
// ensemble streams use the sample index instead.
enum : std::uint64_t {
  kCharfnStream = 0xC0FFEE00ull << 24,
  kUnitsStream,
  kSkellamStream,
  kHermiteStream,
  kOrthoStream,
};

std::string num(double x) { return format_double(x); }

// Each coordinate of 1..min(K, width) joins the support with probability 1/2.
FiniteFunctional random_functional(rng::CounterStream& rng, std::size_t K, std::size_t width,
                                   double amplitude) {
  const std::size_t limit = std::min(K, width);
  FiniteFunctional phi;
  while (phi.empty()) {
    for (std::size_t n = 1; n <= limit; ++n) {
      if (rng.uniform() < 0.5) phi.set(n, amplitude * (2.0 * rng.uniform() - 1.0));
    }
  }
  return phi;
}

SampleOptions options(const ExperimentConfig& c) { return SampleOptions{c.threads}; }

std::shared_ptr<const LevyModel> shared(LevyModel m) {
  return std::make_shared<const LevyModel>(std::move(m));
}

// Ensemble-based suites need an interior split point.
void require_two_times(const ExperimentConfig& c, const char* suite) {
  if (c.grid.size() < 2) {
    throw ConfigError("grid", 0, std::string(suite) + " suite needs at least two grid times");
  }
}

}  // namespace

void run_charfn(const ExperimentConfig& c, Report& report) {
  const auto tol = c.tolerances_for("charfn");
  const TimeGrid grid(c.grid);
  std::ostringstream csv;
  csv << "model,t,case,analytic_re,analytic_im,empirical_re,empirical_im,stderr\n";

  const LevyModel models[] = {c.gaussian_model(), c.lp_poisson_model(), c.bernoulli_model(),
                              c.skellam_model()};
  rng::CounterStream rng(c.seed, kCharfnStream, 0);
  for (const auto& model : models) {
    const auto ensemble = sample_paths(shared(model), grid, c.M, c.seed, options(c));
    const std::string kind(model.kind());

    double hermitian = 0.0;
    for (double t : c.grid) {
      int outside = 0;
      for (int i = 0; i < 20; ++i) {
        const auto phi = random_functional(rng, model.dim(), 6, kPi);
        const Complex exact = characteristic_fn(model, phi, t);
        const auto est = empirical_charfn(ensemble, phi, t);
        if (std::abs(est.estimate - exact) > tol.mc_sigma * est.std_error) ++outside;
        hermitian = std::max(hermitian, std::abs(levy_exponent(model, -phi) -
                                                  std::conj(levy_exponent(model, phi))));
        csv << kind << ',' << num(t) << ',' << i << ',' << num(exact.real()) << ','
            << num(exact.imag()) << ',' << num(est.estimate.real()) << ','
            << num(est.estimate.imag()) << ',' << num(est.std_error) << '\n';
      }
      // At least 19 of 20 cases inside the band.
      report.checks.push_back(make_record(
          "charfn", kind + "/t=" + num(t) + "/outside_band_count",
          "E exp(i<phi,L_t>) = exp(t Psi(phi)) (Levy-Khintchine)", outside, 1.0));
    }
    report.checks.push_back(make_record("charfn", kind + "/hermitian_symmetry",
                                        "Psi(-phi) = conj Psi(phi)", hermitian,
                                        tol.closed_form));
  }
  report.artifacts["charfn.csv"] = csv.str();
}

void run_skellam(const ExperimentConfig& c, Report& report) {
  const auto tol = c.tolerances_for("skellam");
  const auto profile = c.profile_a();
  const std::size_t K = profile.dim();
  rng::CounterStream rng(c.seed, kSkellamStream, 0);

  double mass_gap = 0.0;
  double asym = 0.0;
  const double mus[] = {0.0, 0.25, 0.5, 1.0, 2.0, 2.5, 4.0, 5.0};
  for (double a : mus) {
    for (double b : mus) {
      if (a + b > 5.0) continue;
      double mass = 0.0;
      for (long k = -60; k <= 60; ++k) mass += skellam::skellam_pmf({a, b}, k);
      mass_gap = std::max(mass_gap, std::fabs(1.0 - mass));
    }
    for (long k = 0; k <= 20; ++k) {
      asym = std::max(asym, std::fabs(skellam::skellam_pmf({a, a}, k) -
                                      skellam::skellam_pmf({a, a}, -k)));
    }
  }
  report.checks.push_back(make_record("skellam", "pmf_mass_|k|<=60", "sum_k Skellam pmf = 1",
                                      mass_gap, 1e-12));
  report.checks.push_back(make_record("skellam", "pmf_symmetry_equal_rates",
                                      "pmf(mu,mu,k) = pmf(mu,mu,-k)", asym, tol.closed_form));

  // Closed-form exponent against pmf summation, one coordinate at a time.
  double summation_gap = 0.0;
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(K));
    std::vector<double> lambdas = profile.lambdas();
    lambdas[n - 1] = rng.uniform();
    const skellam::LambdaProfile p(lambdas);
    const double phi = kPi * (2.0 * rng.uniform() - 1.0);
    const Complex closed = skellam::psi_lambda(p, FiniteFunctional::axis(n, phi));
    const Complex summed = skellam::coordinate_exponent_by_summation(p, n, phi, 1.0);
    summation_gap = std::max(summation_gap, std::abs(closed - summed));
  }
  report.checks.push_back(make_record("skellam", "exponent_vs_pmf_summation",
                                      "Psi_lambda summand = log E exp(i phi X_n,1)",
                                      summation_gap, 1e-10));

  double route_gap = 0.0;
  const LevyModel model = profile.model();
  for (int i = 0; i < 20; ++i) {
    const auto phi = random_functional(rng, K, K, 2.0 * kPi);
    route_gap = std::max(route_gap,
                         std::abs(skellam::psi_lambda(profile, phi) - levy_exponent(model, phi)));
  }
  report.checks.push_back(make_record("skellam", "psi_lambda_vs_levy_exponent",
                                      "Psi_lambda(phi) = Levy-Khintchine exponent of X^lambda",
                                      route_gap, tol.closed_form));

  // Inner products of exponential units, Monte Carlo against closed form.
  const double t = c.grid.back();
  const auto ensemble = sample_paths(shared(model), TimeGrid(c.grid), c.M, c.seed, options(c));
  double conj_gap = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto f = random_functional(rng, K, K, kPi);
    const auto g = random_functional(rng, K, K, kPi);
    const Complex exact = skellam::unit_inner_product(profile, f, g, t);
    const auto est = empirical_charfn(ensemble, f - g, t);
    report.checks.push_back(make_record(
        "skellam", "unit_inner_product/pair" + std::to_string(i),
        "<u_f(t), u_g(t)> = exp(t Psi_lambda(f-g))", std::abs(est.estimate - exact),
        tol.mc_sigma * est.std_error, est.std_error));
    conj_gap = std::max(conj_gap, std::abs(skellam::unit_inner_product(profile, g, f, t) -
                                           std::conj(exact)));
  }
  report.checks.push_back(make_record("skellam", "inner_product_conjugate_symmetry",
                                      "<u_g, u_f> = conj <u_f, u_g>", conj_gap, 0.0));
}

void run_units(const ExperimentConfig& c, Report& report) {
  require_two_times(c, "units");
  const auto tol = c.tolerances_for("units");
  const TimeGrid grid(c.grid);
  const double s = c.grid[0];
  const double t = c.grid[1] - c.grid[0];
  const double T = c.grid.back();
  rng::CounterStream rng(c.seed, kUnitsStream, 0);

  const auto q = c.gaussian_model().variances();
  const auto gaussian = shared(GaussianDiagonal(std::vector<double>(c.K, 0.0), q));
  const auto bernoulli = shared(c.bernoulli_model());
  const auto skellam_model = shared(c.skellam_model());
  const auto g_paths = sample_paths(gaussian, grid, c.M, c.seed, options(c));
  const auto b_paths = sample_paths(bernoulli, grid, c.M, c.seed, options(c));
  const auto s_paths = sample_paths(skellam_model, grid, c.M, c.seed, options(c));

  double qsum = 0.0;
  for (double v : q) qsum += v;
  std::vector<double> hv(c.K);
  for (std::size_t n = 0; n < c.K; ++n) hv[n] = q[n] * (n % 2 ? -0.5 : 0.5) / std::sqrt(qsum);
  const units::CameronMartinVector h(hv, q);  // |h|_H^2 = 1/4

  // Factorization, all three unit families.
  const auto phi = random_functional(rng, c.K, c.K, kPi);
  const std::pair<const char*, std::pair<units::UnitSpec, const PathEnsemble*>> cases[] = {
      {"exponential/skellam", {units::ExponentialUnit{phi}, &s_paths}},
      {"exponential/gaussian", {units::ExponentialUnit{phi}, &g_paths}},
      {"gaussian", {units::GaussianUnit{h}, &g_paths}},
      {"parity", {units::ParityUnit{}, &b_paths}},
  };
  for (const auto& [name, item] : cases) {
    const auto res = units::factorization_check(item.first, *item.second, s, t);
    report.checks.push_back(make_record("units", std::string("factorization/") + name,
                                        "u(s+t) = u(s) (u(t) o sigma_s)", res.relative(), 1e-10));
  }

  // Modulus of exponential and parity units.
  double exp_mod = 0.0;
  for (const auto& v : units::eval_unit(units::ExponentialUnit{phi}, s_paths, T)) {
    exp_mod = std::max(exp_mod, std::fabs(std::abs(v) - 1.0));
  }
  double parity_mod = 0.0;
  for (const auto& v : units::eval_unit(units::ParityUnit{}, b_paths, T)) {
    parity_mod = std::max(parity_mod, std::fabs(std::abs(v) - 1.0));
  }
  report.checks.push_back(
      make_record("units", "exponential_modulus", "|exp(i<phi,L_t>)| = 1", exp_mod, 1e-14));
  report.checks.push_back(
      make_record("units", "parity_modulus", "(-1)^{N_t} in {-1,+1}", parity_mod, 0.0));

  // Gaussian unit norm and mean.
  {
    const auto values = units::eval_unit(units::GaussianUnit{h}, g_paths, T);
    std::vector<double> u(values.size()), u2(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      u[i] = values[i].real();
      u2[i] = u[i] * u[i];
    }
    const auto second = real_mean(u2);
    const double mc_norm = std::sqrt(second.mean);
    const double se_norm = second.std_error / (2.0 * mc_norm);
    const double exact = units::gaussian_unit_norm(h, T);
    report.checks.push_back(make_record("units", "gaussian_norm",
                                        "||u^h(t)|| = exp(t |h|_H^2 / 2)",
                                        std::fabs(mc_norm - exact), tol.mc_sigma * se_norm,
                                        se_norm));
    const auto first = real_mean(u);
    report.checks.push_back(make_record("units", "gaussian_mean_one", "E u^h(t) = 1",
                                        std::fabs(first.mean - 1.0),
                                        tol.mc_sigma * first.std_error, first.std_error));
  }

  // Weak martingale property against bounded functions of L_s.
  {
    FiniteFunctional small;
    for (std::size_t n = 1; n <= std::min<std::size_t>(c.K, 4); ++n) small.set(n, 0.3 * n);
    const std::pair<const char*, units::TestFunction> fns[] = {
        {"one", [](std::span<const double>) { return 1.0; }},
        {"cos", [small](std::span<const double> x) { return std::cos(small.pair(x)); }},
        {"sin", [small](std::span<const double> x) { return std::sin(small.pair(x)); }},
        {"tanh_x1", [](std::span<const double> x) { return std::tanh(x[0]); }},
        {"indicator_x1_pos", [](std::span<const double> x) { return x[0] > 0.0 ? 1.0 : 0.0; }},
    };
    std::vector<units::TestFunction> list;
    for (const auto& [name, f] : fns) list.push_back(f);
    const auto gaps = units::martingale_test(h, g_paths, s, t, list);
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      report.checks.push_back(make_record(
          "units", std::string("martingale/") + fns[i].first, "E[u^h(s+t) | F_s] = u^h(s)",
          gaps[i].gap, tol.mc_sigma * gaps[i].std_error, gaps[i].std_error));
    }
  }

  // Multiplication isometry with real parts of exponential units.
  for (int i = 0; i < 10; ++i) {
    const auto a = random_functional(rng, c.K, c.K, kPi);
    const auto b = random_functional(rng, c.K, c.K, kPi);
    auto f = [a](std::span<const double> x, std::int64_t) { return Complex(std::cos(a.pair(x)), 0.0); };
    auto g = [b](std::span<const double> x, std::int64_t) { return Complex(std::cos(b.pair(x)), 0.0); };
    const auto res = units::multiplication_isometry_check(s_paths, f, g, s, t);
    report.checks.push_back(make_record(
        "units", "multiplication_isometry/pair" + std::to_string(i),
        "||f (g o sigma_s)||^2 = ||f||^2 ||g||^2", std::fabs(res.lhs - res.rhs),
        tol.mc_sigma * res.std_error, res.std_error));
  }

  // Parity unit: mean and distance from every exponential unit on a grid.
  {
    const auto values = units::eval_unit(units::ParityUnit{}, b_paths, T);
    const auto est = complex_mean(values);
    const double exact = std::exp(-2.0 * bernoulli->get_if<BernoulliCompound>()->rate() * T);
    report.checks.push_back(make_record("units", "parity_mean", "E (-1)^{N_t} = exp(-2 lambda t)",
                                        std::abs(est.estimate - exact),
                                        tol.mc_sigma * est.std_error, est.std_error));

    const std::size_t dims = std::min<std::size_t>(c.K, 4);
    const std::size_t M = std::min<std::size_t>(c.M, 10000);
    const std::size_t j = b_paths.grid().index_of(T);
    std::size_t total = 1;
    for (std::size_t d = 0; d < dims; ++d) total *= 6;
    double worst = 0.0;
    for (std::size_t code = 0; code < total; ++code) {
      FiniteFunctional f;
      std::size_t rest = code;
      for (std::size_t d = 1; d <= dims; ++d) {
        f.set(d, kPi / 3.0 * static_cast<double>(rest % 6));
        rest /= 6;
      }
      Complex acc(0.0, 0.0);
      for (std::size_t i = 0; i < M; ++i) {
        const double angle = f.pair(b_paths.position(i, j));
        acc += values[i] * Complex(std::cos(angle), -std::sin(angle));
      }
      worst = std::max(worst, std::abs(acc) / static_cast<double>(M));
    }
    report.checks.push_back(make_record("units", "parity_not_exponential",
                                        "parity unit is not an exponential unit (max |corr|)",
                                        worst, 0.99));
  }
}

void run_hermite(const ExperimentConfig& c, Report& report) {
  const auto tol = c.tolerances_for("hermite");
  rng::CounterStream rng(c.seed, kHermiteStream, 0);

  // Gaussian orthogonality of He_j; cheap enough to always use 10^6 draws.
  {
    const std::size_t M = std::max<std::size_t>(c.M, 1000000);
    std::vector<double> z(M);
    for (std::size_t i = 0; i < M; i += 2) {
      auto [a, b] = rng::normal_pair(rng);
      z[i] = a;
      if (i + 1 < M) z[i + 1] = b;
    }
    std::vector<double> prod(M);
    for (unsigned j = 0; j <= 4; ++j) {
      for (unsigned k = j; k <= 4; ++k) {
        for (std::size_t i = 0; i < M; ++i) {
          prod[i] = spatial::hermite(j, z[i]) * spatial::hermite(k, z[i]);
        }
        const auto est = real_mean(prod);
        const double exact = j == k ? std::tgamma(k + 1.0) : 0.0;
        report.checks.push_back(make_record(
            "hermite", "orthogonality/" + std::to_string(j) + "," + std::to_string(k),
            "E He_j(Z) He_k(Z) = delta_jk k!", std::fabs(est.mean - exact),
            tol.mc_sigma * est.std_error, est.std_error));
      }
    }
  }

  // Generating function truncated at total degree 12, |z| <= 2.
  {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
      for (int i = 0; i < 100; ++i) {
        std::vector<double> z(n), y(n);
        double norm = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          z[k] = rng::normal_pair(rng).first;
          norm += z[k] * z[k];
          y[k] = rng::normal_pair(rng).first;
        }
        const double radius = 2.0 * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
        for (double& v : z) v *= radius / std::sqrt(norm);
        worst = std::max(worst, std::fabs(spatial::generating_function(z, y) -
                                          spatial::generating_series(z, y, 12)));
      }
    }
    report.checks.push_back(make_record("hermite", "generating_function_degree12_|z|<=2",
                                        "exp(<z,y> - |z|^2/2) = sum z^a/a! H_a(y)", worst, 1e-6));
  }

  // Reconstruction from exponential probes.
  std::ostringstream csv;
  csv << "n,degree,condition,max_error,tolerance\n";
  for (std::size_t n = 1; n <= 3; ++n) {
    for (unsigned d = 1; d <= 4; ++d) {
      const auto sys = spatial::build_hermite_system(n, d);
      double worst = 0.0;
      for (int i = 0; i < 5; ++i) {
        std::vector<double> y(n);
        for (double& v : y) v = rng::normal_pair(rng).first;
        const auto h = spatial::reconstruct(sys, spatial::truncated_probe_values(sys, y));
        for (std::size_t b = 0; b < sys.indices.size(); ++b) {
          worst = std::max(worst, std::fabs(h(static_cast<Eigen::Index>(b)) -
                                            spatial::hermite(sys.indices[b], y)));
        }
      }
      const double bound = 1e-8 * sys.condition;
      csv << n << ',' << d << ',' << num(sys.condition) << ',' << num(worst) << ',' << num(bound)
          << '\n';
      report.checks.push_back(make_record(
          "hermite", "reconstruction/n=" + std::to_string(n) + ",d=" + std::to_string(d),
          "A^{-1} (exponential probes) = H_beta", worst, bound));
    }
  }
  report.artifacts["hermite_reconstruction.csv"] = csv.str();

  {
    const spatial::ExplicitProbes probes{{{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}, {2, 1}}};
    double retries = std::numeric_limits<double>::infinity();
    try {
      retries = spatial::build_hermite_system(2, 2, probes).perturbation_retries;
    } catch (const NumericalError&) {
    }
    report.checks.push_back(make_record("hermite", "probe_pattern_n2_d2_invertible",
                                        "probes (1,0),(0,1),(1,1),... give invertible A",
                                        retries, 0.0));
  }

  // Whitening keeps the bilinear pairing.
  {
    const auto model = c.gaussian_model();
    const std::size_t n = std::min<std::size_t>(c.K, 3);
    std::vector<FiniteFunctional> psis;
    for (std::size_t i = 1; i <= n; ++i) {
      FiniteFunctional psi = FiniteFunctional::axis(i, 1.0);
      if (i + 1 <= c.K) psi.set(i + 1, 0.5);
      psis.push_back(psi);
    }
    const spatial::Whitener w(spatial::covariance_matrix(model, psis), c.grid.back());
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      Eigen::VectorXd z(static_cast<Eigen::Index>(n)), y(static_cast<Eigen::Index>(n));
      for (Eigen::Index k = 0; k < z.size(); ++k) {
        z(k) = rng::normal_pair(rng).first;
        y(k) = rng::normal_pair(rng).first;
      }
      const double scale = std::max(1.0, z.norm() * y.norm());
      worst = std::max(worst, std::fabs(w.lift(z).dot(w.whiten(y)) - z.dot(y)) / scale);
    }
    report.checks.push_back(make_record("hermite", "whitening_bilinear_invariance",
                                        "<z~, y~> = <z, y>", worst, tol.closed_form));
  }
}

void run_density(const ExperimentConfig& c, Report& report) {
  const auto tol = c.tolerances_for("density");
  const std::size_t K = std::min<std::size_t>(c.K, 2);
  const auto q_all = c.gaussian_model().variances();
  const std::vector<double> q(q_all.begin(), q_all.begin() + static_cast<std::ptrdiff_t>(K));
  const auto model = shared(GaussianDiagonal(std::vector<double>(K, 0.0), q));
  const double t = c.grid.back();
  const auto paths = sample_paths(model, TimeGrid(c.grid), c.M, c.seed, options(c));

  const double spacing = 0.8 / std::sqrt(t * q[0]);
  const auto dictionary = spatial::axis_lattice(1, spacing, 64);
  const std::size_t budgets[] = {1, 2, 4, 8, 16, 32, 64};

  const units::PathFunctional indicator = [](std::span<const double> x, std::int64_t) {
    return Complex(x[0] > 0.0 ? 1.0 : 0.0, 0.0);
  };
  const auto curve =
      spatial::exponential_density_residual(paths.view(), t, indicator, dictionary, budgets);

  std::ostringstream csv;
  csv << "target,budget,relative_residual\n";
  double increase = 0.0;
  for (std::size_t i = 0; i < curve.budgets.size(); ++i) {
    csv << "indicator_x1_pos," << curve.budgets[i] << ',' << num(curve.residuals[i]) << '\n';
    if (i > 0) increase = std::max(increase, curve.residuals[i] - curve.residuals[i - 1]);
  }
  report.checks.push_back(make_record("density", "indicator/non_increasing",
                                      "nested least squares: residual non-increasing in J",
                                      increase, tol.closed_form));
  report.checks.push_back(make_record("density", "indicator/relative_residual_J64",
                                      "span of exponential units is dense in L^2(F_t)",
                                      curve.residuals.back(), 0.05));

  // A target taken from the dictionary is fitted exactly once it is included.
  const auto member = dictionary[4];
  const units::PathFunctional in_span = [member](std::span<const double> x, std::int64_t) {
    const double a = member.pair(x);
    return Complex(std::cos(a), std::sin(a));
  };
  const auto exact =
      spatial::exponential_density_residual(paths.view(), t, in_span, dictionary, budgets);
  for (std::size_t i = 0; i < exact.budgets.size(); ++i) {
    csv << "dictionary_member_5," << exact.budgets[i] << ',' << num(exact.residuals[i]) << '\n';
  }
  report.checks.push_back(make_record("density", "dictionary_member/residual_at_J8",
                                      "target in span => residual 0", exact.residuals[3],
                                      tol.closed_form));
  report.checks.push_back(make_record("density", "regression_not_regularized",
                                      "design of exponentials has full rank",
                                      curve.regularized || exact.regularized ? 1.0 : 0.0, 0.0));
  report.artifacts["density_residuals.csv"] = csv.str();
}

void run_orthogonality(const ExperimentConfig& c, Report& report) {
  const auto tol = c.tolerances_for("orthogonality");
  const auto profile = c.profile_a();
  const std::size_t K = profile.dim();
  const double t = c.grid.back();
  const auto paths = sample_paths(shared(profile.model()), TimeGrid(c.grid), c.M, c.seed,
                                  options(c));
  rng::CounterStream rng(c.seed, kOrthoStream, 0);

  // f supported on the first min(2, K-1) coordinates.
  FiniteFunctional f;
  for (std::size_t n = 1; n + 1 <= K && n <= 2; ++n) f.set(n, kPi * (2.0 * rng.uniform() - 1.0));
  const auto res = spatial::orthogonality_check(profile, paths, t, f);
  report.checks.push_back(make_record("orthogonality", "analytic_product",
                                      "<psi, u_f(t)> = prod_n p_n (1 - Phi_n(f_n)) = 0",
                                      std::abs(res.analytic), 0.0));
  report.checks.push_back(make_record("orthogonality", "monte_carlo", "<psi, u_f(t)> = 0",
                                      std::abs(res.mc.estimate),
                                      tol.mc_sigma * res.mc.std_error, res.mc.std_error));
  report.checks.push_back(make_record("orthogonality", "psi_norm_squared",
                                      "||psi_K||^2 = prod p_n (1 - p_n)",
                                      std::fabs(res.norm2_mc.mean - res.norm2_analytic),
                                      tol.mc_sigma * res.norm2_mc.std_error,
                                      res.norm2_mc.std_error));
  double zero_factor = 0.0;
  for (std::size_t n = 1; n <= K; ++n) {
    zero_factor = std::max(zero_factor, std::abs(spatial::orthogonal_factor(profile, n, t, 0.0)));
  }
  report.checks.push_back(make_record("orthogonality", "factor_vanishes_at_zero",
                                      "E phi_n(X_n) = 0", zero_factor, 0.0));
}

void run_discriminate(const ExperimentConfig& c, Report& report) {
  const auto a = c.profile_a();
  const auto b = c.profile_b();
  const auto res = skellam::discriminate(a, b, c.discriminate.grid_points);
  std::optional<std::size_t> first_diff;
  for (std::size_t n = 1; n <= a.dim() && !first_diff; ++n) {
    if (a.lambda(n) != b.lambda(n)) first_diff = n;
  }
  if (!first_diff) {
    report.checks.push_back(make_record("discriminate", "configured_profiles/max_gap",
                                        "Psi_lambda = Psi_lambda' iff lambda = lambda'",
                                        res.max_gap, 0.0));
  } else {
    report.checks.push_back(make_record("discriminate", "configured_profiles/first_coordinate",
                                        "Psi_lambda = Psi_lambda' iff lambda = lambda'",
                                        res.coordinate == first_diff ? 0.0 : 1.0, 0.0));
  }

  // Single-coordinate perturbations by delta = 1/4 down to n = 20.
  constexpr std::size_t kSweep = 20;
  constexpr double delta = 0.25;
  const auto base = c.skellam.lambda.expand(Truncation(kSweep));
  std::ostringstream csv;
  csv << "coordinate,gap,expected,detected\n";
  double worst = 0.0;
  double misses = 0.0;
  for (std::size_t n = 1; n <= kSweep; ++n) {
    auto moved = base;
    moved[n - 1] += base[n - 1] <= 0.5 ? delta : -delta;
    const auto r = skellam::discriminate(skellam::LambdaProfile(base),
                                         skellam::LambdaProfile(moved), c.discriminate.grid_points);
    const double expected = 2.0 * skellam::LambdaProfile::alpha(n) * delta;
    worst = std::max(worst, std::fabs(r.max_gap - expected) / expected);
    if (r.coordinate != n) misses += 1.0;
    csv << n << ',' << num(r.max_gap) << ',' << num(expected) << ','
        << (r.coordinate ? std::to_string(*r.coordinate) : "none") << '\n';
  }
  report.checks.push_back(make_record("discriminate", "sweep_n<=20/relative_gap_error",
                                      "max gap = 2 alpha_n delta", worst, 1e-3));
  report.checks.push_back(make_record("discriminate", "sweep_n<=20/missed_coordinates",
                                      "perturbed coordinate is detected", misses, 0.0));
  report.artifacts["discriminator_gaps.csv"] = csv.str();
}

Report run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.effective_config = print_effective_config(config);
  for (const auto& suite : config.selected_suites()) {
    if (suite == "charfn") run_charfn(config, report);
    else if (suite == "units") run_units(config, report);
    else if (suite == "skellam") run_skellam(config, report);
    else if (suite == "hermite") run_hermite(config, report);
    else if (suite == "density") run_density(config, report);
    else if (suite == "orthogonality") run_orthogonality(config, report);
    else if (suite == "discriminate") run_discriminate(config, report);
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace levyps::experiment
