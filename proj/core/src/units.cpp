#include "levyps/units.hpp"

#include <cmath>
#include <string>

#include "levyps/errors.hpp"

namespace levyps::units {

CameronMartinVector::CameronMartinVector(std::vector<double> h, std::vector<double> variances)
    : h_(std::move(h)), variances_(std::move(variances)) {
  if (h_.size() != variances_.size()) {
    throw PreconditionError("CameronMartinVector: h and variances differ in length");
  }
  dual_.resize(h_.size());
  for (std::size_t n = 0; n < h_.size(); ++n) {
    if (!(variances_[n] > 0.0)) {
      throw PreconditionError("CameronMartinVector: covariance must be non-degenerate");
    }
    dual_[n] = h_[n] / variances_[n];
    norm_h2_ += h_[n] * h_[n] / variances_[n];
  }
  if (!std::isfinite(norm_h2_)) throw PreconditionError("CameronMartinVector: infinite norm");
}

CameronMartinVector::CameronMartinVector(std::vector<double> h, const GaussianDiagonal& model)
    : CameronMartinVector(std::move(h), model.variances()) {}

CameronMartinVector CameronMartinVector::scaled(double c) const {
  std::vector<double> h = h_;
  for (double& x : h) x *= c;
  return CameronMartinVector(std::move(h), variances_);
}

const char* unit_kind(const UnitSpec& spec) noexcept {
  switch (spec.index()) {
    case 0: return "exponential";
    case 1: return "gaussian";
    default: return "parity";
  }
}

void require_compatible(const UnitSpec& spec, const LevyModel& model) {
  if (const auto* e = std::get_if<ExponentialUnit>(&spec)) {
    require_within(e->phi, model.dim(), "exponential unit");
  } else if (const auto* g = std::get_if<GaussianUnit>(&spec)) {
    const auto* m = model.get_if<GaussianDiagonal>();
    if (!m) throw PreconditionError("gaussian unit requires a GaussianDiagonal model");
    if (!m->centered()) throw PreconditionError("gaussian unit requires zero drift");
    if (m->variances() != g->h.variances()) {
      throw PreconditionError("gaussian unit built for different variances than the model");
    }
  } else if (!model.get_if<BernoulliCompound>()) {
    throw PreconditionError("parity unit requires a BernoulliCompound model");
  }
}

PathFunctional unit_functional(const UnitSpec& spec, double t) {
  if (const auto* e = std::get_if<ExponentialUnit>(&spec)) {
    return [phi = e->phi](std::span<const double> x, std::int64_t) {
      const double angle = phi.pair(x);
      return Complex(std::cos(angle), std::sin(angle));
    };
  }
  if (const auto* g = std::get_if<GaussianUnit>(&spec)) {
    return [dual = g->h.dual(), half = 0.5 * t * g->h.norm_h2()](std::span<const double> x,
                                                                   std::int64_t) {
      double pairing = 0.0;
      for (std::size_t n = 0; n < dual.size(); ++n) pairing += dual[n] * x[n];
      return Complex(std::exp(pairing - half), 0.0);
    };
  }
  return [](std::span<const double>, std::int64_t arrivals) {
    return Complex((arrivals & 1) ? -1.0 : 1.0, 0.0);
  };
}

std::vector<Complex> eval_functional(const PathFunctional& f, const PathView& view, double t) {
  const std::size_t j = view.index_of(t);
  std::vector<Complex> out(view.samples());
  std::vector<double> x(view.dim());
  for (std::size_t s = 0; s < out.size(); ++s) {
    view.position(s, j, x);
    out[s] = f(x, view.arrivals(s, j));
  }
  return out;
}

std::vector<Complex> eval_unit(const UnitSpec& spec, const PathView& view, double t) {
  require_compatible(spec, view.ensemble().model());
  return eval_functional(unit_functional(spec, t), view, t);
}

std::vector<Complex> eval_unit(const UnitSpec& spec, const PathEnsemble& ensemble, double t) {
  return eval_unit(spec, ensemble.view(), t);
}

double gaussian_unit_norm(const CameronMartinVector& h, double t) {
  if (!(t > 0.0)) throw PreconditionError("gaussian_unit_norm: t must be positive");
  return std::exp(0.5 * t * h.norm_h2());
}

FactorizationResult factorization_check(const UnitSpec& spec, const PathEnsemble& ensemble,
                                        double s, double t) {
  if (!(s > 0.0) || !(t > 0.0)) throw PreconditionError("factorization_check: s, t must be > 0");
  const auto whole = eval_unit(spec, ensemble.view(), s + t);
  const auto head = eval_unit(spec, ensemble.view(), s);
  const auto tail = eval_unit(spec, shifted_view(ensemble, s), t);
  FactorizationResult out;
  for (std::size_t i = 0; i < whole.size(); ++i) {
    out.max_abs_error = std::max(out.max_abs_error, std::abs(whole[i] - head[i] * tail[i]));
    out.max_magnitude = std::max(out.max_magnitude, std::abs(whole[i]));
  }
  return out;
}

std::vector<GapEstimate> martingale_test(const CameronMartinVector& h,
                                         const PathEnsemble& ensemble, double s, double t,
                                         std::span<const TestFunction> test_fns) {
  const UnitSpec spec = GaussianUnit{h};
  const auto later = eval_unit(spec, ensemble, s + t);
  const auto now = eval_unit(spec, ensemble, s);
  const auto view = ensemble.view();
  const std::size_t js = view.index_of(s);
  const std::size_t M = ensemble.samples();

  std::vector<GapEstimate> out;
  std::vector<double> diff(M);
  for (const auto& g : test_fns) {
    for (std::size_t i = 0; i < M; ++i) {
      const double weight = g(ensemble.position(i, js));
      diff[i] = (later[i].real() - now[i].real()) * weight;
    }
    const auto est = real_mean(diff);
    out.push_back({std::fabs(est.mean), est.std_error});
  }
  return out;
}

IsometryResult multiplication_isometry_check(const PathEnsemble& ensemble,
                                             const PathFunctional& f, const PathFunctional& g,
                                             double s, double t) {
  const auto fv = eval_functional(f, ensemble.view(), s);
  const auto gv = eval_functional(g, shifted_view(ensemble, s), t);
  const std::size_t M = fv.size();
  std::vector<double> a(M), b(M), ab(M);
  for (std::size_t i = 0; i < M; ++i) {
    a[i] = std::norm(fv[i]);
    b[i] = std::norm(gv[i]);
    ab[i] = std::norm(fv[i] * gv[i]);
  }
  const double mean_a = real_mean(a).mean;
  const double mean_b = real_mean(b).mean;
  // Delta-method influence of mean(ab) - mean(a) mean(b).
  std::vector<double> influence(M);
  for (std::size_t i = 0; i < M; ++i) influence[i] = ab[i] - a[i] * mean_b - b[i] * mean_a;
  return {real_mean(ab).mean, mean_a * mean_b, real_mean(influence).std_error};
}

}  // namespace levyps::units
