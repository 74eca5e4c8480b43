#include "levyps/model.hpp"

#include <cmath>
#include <string>

#include "levyps/errors.hpp"

namespace levyps {
namespace {

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) throw PreconditionError(std::string(what) + ": K must be >= 1");
}

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw PreconditionError(std::string(what) + ": non-finite parameter");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Truncation::Truncation(std::size_t K) : K_(K) {
  if (K == 0) throw PreconditionError("truncation K must be >= 1");
}

GaussianDiagonal::GaussianDiagonal(std::vector<double> drift, std::vector<double> variances)
    : drift_(std::move(drift)), variances_(std::move(variances)) {
  require_nonempty(variances_.size(), "GaussianDiagonal");
  if (drift_.size() != variances_.size()) {
    throw PreconditionError("GaussianDiagonal: drift and variances differ in length");
  }
  require_finite(drift_, "GaussianDiagonal drift");
  require_finite(variances_, "GaussianDiagonal variances");
  for (double q : variances_) {
    if (!(q > 0.0)) throw PreconditionError("GaussianDiagonal: variances must be positive");
  }
}

bool GaussianDiagonal::centered() const noexcept {
  for (double b : drift_) {
    if (b != 0.0) return false;
  }
  return true;
}

LpCompoundPoisson::LpCompoundPoisson(std::vector<double> rates) : rates_(std::move(rates)) {
  require_nonempty(rates_.size(), "LpCompoundPoisson");
  require_finite(rates_, "LpCompoundPoisson rates");
  for (double r : rates_) {
    if (!(r > 0.0)) throw PreconditionError("LpCompoundPoisson: rates must be positive");
  }
}

double LpCompoundPoisson::total_rate() const noexcept {
  double acc = 0.0;
  for (double r : rates_) acc += r;
  return acc;
}

BernoulliCompound::BernoulliCompound(double rate, std::vector<double> probs)
    : rate_(rate), probs_(std::move(probs)) {
  require_nonempty(probs_.size(), "BernoulliCompound");
  if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
    throw PreconditionError("BernoulliCompound: rate must be positive and finite");
  }
  for (double p : probs_) {
    if (!(p > 0.0 && p < 1.0)) {
      throw PreconditionError("BernoulliCompound: probabilities must lie in (0,1)");
    }
  }
}

SkellamFamily::SkellamFamily(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  require_nonempty(lambdas_.size(), "SkellamFamily");
  for (double l : lambdas_) {
    if (!(l >= 0.0 && l <= 1.0)) {
      throw PreconditionError("SkellamFamily: lambdas must lie in [0,1]");
    }
  }
}

double SkellamFamily::weight(std::size_t n) noexcept {
  return std::ldexp(1.0, -static_cast<int>(n));
}

double SkellamFamily::up_rate(std::size_t n) const {
  return weight(n) * lambdas_.at(n - 1);
}

double SkellamFamily::down_rate(std::size_t n) const {
  return weight(n) * (1.0 - lambdas_.at(n - 1));
}

double SkellamFamily::drift(std::size_t n) const {
  return weight(n) * (2.0 * lambdas_.at(n - 1) - 1.0);
}

double SkellamFamily::levy_mass() const noexcept {
  double acc = 0.0;
  for (std::size_t n = 1; n <= lambdas_.size(); ++n) {
    acc += weight(n) * (lambdas_[n - 1] + (1.0 - lambdas_[n - 1]));
  }
  return acc;
}

std::size_t LevyModel::dim() const noexcept {
  return std::visit([](const auto& m) { return m.dim(); }, model_);
}

std::string_view LevyModel::kind() const noexcept {
  return std::visit(
      Overloaded{[](const GaussianDiagonal&) { return std::string_view("gaussian"); },
                 [](const LpCompoundPoisson&) { return std::string_view("lp_poisson"); },
                 [](const BernoulliCompound&) { return std::string_view("bernoulli"); },
                 [](const SkellamFamily&) { return std::string_view("skellam"); }},
      model_);
}

bool LevyModel::has_jumps() const noexcept {
  return !std::holds_alternative<GaussianDiagonal>(model_);
}

Complex levy_exponent(const LevyModel& model, const FiniteFunctional& phi) {
  require_within(phi, model.dim(), "levy_exponent");
  return std::visit(
      Overloaded{
          [&](const GaussianDiagonal& m) {
            double drift = 0.0;
            double quad = 0.0;
            for (const auto& [n, v] : phi) {
              drift += m.drift()[n - 1] * v;
              quad += m.variances()[n - 1] * v * v;
            }
            return Complex(-0.5 * quad, drift);
          },
          [&](const LpCompoundPoisson& m) {
            // Compensator-free: the truncated jump measure is finite.
            Complex acc(0.0, 0.0);
            for (const auto& [n, v] : phi) {
              const double rate = m.rates()[n - 1];
              const double angle = v * rate;
              acc += rate * Complex(std::cos(angle) - 1.0, std::sin(angle));
            }
            return acc;
          },
          [&](const BernoulliCompound& m) {
            // lambda (E[exp(i<phi, X>)] - 1) with the product Bernoulli jump law.
            Complex jump_cf(1.0, 0.0);
            for (const auto& [n, v] : phi) {
              const double p = m.probs()[n - 1];
              jump_cf *= Complex(p * std::cos(v) + (1.0 - p), p * std::sin(v));
            }
            return m.rate() * (jump_cf - 1.0);
          },
          [&](const SkellamFamily& m) {
            Complex acc(0.0, 0.0);
            for (const auto& [n, v] : phi) {
              const double alpha = SkellamFamily::weight(n);
              const double lambda = m.lambdas()[n - 1];
              acc += alpha * Complex(std::cos(v) - 1.0, (2.0 * lambda - 1.0) * std::sin(v));
            }
            return acc;
          }},
      model.variant());
}

Complex characteristic_fn(const LevyModel& model, const FiniteFunctional& phi, double t) {
  if (!(t > 0.0)) throw PreconditionError("characteristic_fn: t must be positive");
  return std::exp(t * levy_exponent(model, phi));
}

}  // namespace levyps
