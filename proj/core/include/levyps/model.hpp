#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "levyps/functional.hpp"

namespace levyps {

using Complex = std::complex<double>;

// Number of retained coordinates of the infinite-dimensional state space.
class Truncation {
 public:
  explicit Truncation(std::size_t K);
  std::size_t K() const noexcept { return K_; }

 private:
  std::size_t K_;
};

// Independent Brownian coordinates with drift b_n and variance q_n per unit
// time; Q(phi, psi) = sum q_n phi_n psi_n.
class GaussianDiagonal {
 public:
  GaussianDiagonal(std::vector<double> drift, std::vector<double> variances);

  std::size_t dim() const noexcept { return variances_.size(); }
  const std::vector<double>& drift() const noexcept { return drift_; }
  const std::vector<double>& variances() const noexcept { return variances_; }
  bool centered() const noexcept;

 private:
  std::vector<double> drift_;
  std::vector<double> variances_;
};

// Jumps of size rate_n along e_n arriving at rate rate_n (the l^p example).
class LpCompoundPoisson {
 public:
  explicit LpCompoundPoisson(std::vector<double> rates);

  std::size_t dim() const noexcept { return rates_.size(); }
  const std::vector<double>& rates() const noexcept { return rates_; }
  double total_rate() const noexcept;

 private:
  std::vector<double> rates_;
};

// Poisson(rate) arrivals; each arrival adds a vector of independent
// Bernoulli(p_n) coordinates.
class BernoulliCompound {
 public:
  BernoulliCompound(double rate, std::vector<double> probs);

  std::size_t dim() const noexcept { return probs_.size(); }
  double rate() const noexcept { return rate_; }
  const std::vector<double>& probs() const noexcept { return probs_; }

 private:
  double rate_;
  std::vector<double> probs_;
};

// X_n = N_n^+ - N_n^- with rates alpha_n lambda_n and alpha_n (1 - lambda_n),
// alpha_n = 2^-n.
class SkellamFamily {
 public:
  explicit SkellamFamily(std::vector<double> lambdas);

  std::size_t dim() const noexcept { return lambdas_.size(); }
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }

  static double weight(std::size_t n) noexcept;  // 2^-n, n is 1-based
  double up_rate(std::size_t n) const;           // alpha_n lambda_n
  double down_rate(std::size_t n) const;         // alpha_n (1 - lambda_n)
  double drift(std::size_t n) const;             // alpha_n (2 lambda_n - 1)
  // sum_{n<=K} alpha_n [lambda_n + (1 - lambda_n)] = 1 - 2^-K
  double levy_mass() const noexcept;

 private:
  std::vector<double> lambdas_;
};

class LevyModel {
 public:
  using Variant =
      std::variant<GaussianDiagonal, LpCompoundPoisson, BernoulliCompound, SkellamFamily>;

  LevyModel(GaussianDiagonal m) : model_(std::move(m)) {}
  LevyModel(LpCompoundPoisson m) : model_(std::move(m)) {}
  LevyModel(BernoulliCompound m) : model_(std::move(m)) {}
  LevyModel(SkellamFamily m) : model_(std::move(m)) {}

  std::size_t dim() const noexcept;
  std::string_view kind() const noexcept;
  // Whether sample paths carry a Poisson arrival count.
  bool has_jumps() const noexcept;

  const Variant& variant() const noexcept { return model_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&model_);
  }

 private:
  Variant model_;
};

// Closed-form Levy exponent Psi with E[exp(i<phi, L_t>)] = exp(t Psi(phi)).
Complex levy_exponent(const LevyModel& model, const FiniteFunctional& phi);

// exp(t * levy_exponent(model, phi)); requires t > 0.
Complex characteristic_fn(const LevyModel& model, const FiniteFunctional& phi, double t);

}  // namespace levyps
