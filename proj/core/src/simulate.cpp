#include "levyps/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "levyps/errors.hpp"
#include "levyps/rng.hpp"

namespace levyps {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw PreconditionError("TimeGrid: at least one time required");
  double prev = 0.0;
  for (double t : times_) {
    if (!std::isfinite(t) || !(t > prev)) {
      throw PreconditionError("TimeGrid: times must be positive and strictly increasing");
    }
    prev = t;
  }
}

double TimeGrid::at(std::size_t j) const {
  if (j == 0) return 0.0;
  return times_.at(j - 1);
}

double TimeGrid::interval_length(std::size_t interval) const {
  return at(interval + 1) - at(interval);
}

bool TimeGrid::contains(double t) const noexcept {
  if (t == 0.0) return true;
  for (double g : times_) {
    if (std::fabs(g - t) <= 1e-12 * std::max(1.0, g)) return true;
  }
  return false;
}

std::size_t TimeGrid::index_of(double t) const {
  if (t == 0.0) return 0;
  for (std::size_t j = 0; j < times_.size(); ++j) {
    if (std::fabs(times_[j] - t) <= 1e-12 * std::max(1.0, times_[j])) return j + 1;
  }
  throw PreconditionError("time " + std::to_string(t) + " is not a grid point");
}

PathEnsemble::PathEnsemble(std::shared_ptr<const LevyModel> model, TimeGrid grid,
                           std::size_t samples, std::uint64_t seed,
                           std::vector<double> increments,
                           std::vector<std::int64_t> jump_counts)
    : model_(std::move(model)),
      grid_(std::move(grid)),
      samples_(samples),
      dim_(model_->dim()),
      seed_(seed),
      increments_(std::move(increments)),
      jump_counts_(std::move(jump_counts)) {
  const std::size_t m = grid_.intervals();
  if (samples_ == 0) throw PreconditionError("PathEnsemble: at least one sample required");
  if (increments_.size() != samples_ * m * dim_ || jump_counts_.size() != samples_ * m) {
    throw PreconditionError("PathEnsemble: storage size does not match M x m x K");
  }
  positions_.assign(samples_ * (m + 1) * dim_, 0.0);
  arrivals_.assign(samples_ * (m + 1), 0);
  for (std::size_t s = 0; s < samples_; ++s) {
    for (std::size_t j = 0; j < m; ++j) {
      const double* inc = &increments_[(s * m + j) * dim_];
      const double* prev = &positions_[(s * (m + 1) + j) * dim_];
      double* next = &positions_[(s * (m + 1) + j + 1) * dim_];
      for (std::size_t k = 0; k < dim_; ++k) next[k] = prev[k] + inc[k];
      arrivals_[s * (m + 1) + j + 1] = arrivals_[s * (m + 1) + j] + jump_counts_[s * m + j];
    }
  }
}

std::span<const double> PathEnsemble::increment(std::size_t sample, std::size_t interval) const {
  const std::size_t m = grid_.intervals();
  return {&increments_.at((sample * m + interval) * dim_), dim_};
}

std::int64_t PathEnsemble::jump_count(std::size_t sample, std::size_t interval) const {
  return jump_counts_.at(sample * grid_.intervals() + interval);
}

std::span<const double> PathEnsemble::position(std::size_t sample,
                                               std::size_t grid_index) const {
  const std::size_t m = grid_.intervals();
  if (sample >= samples_ || grid_index > m) throw std::out_of_range("PathEnsemble::position");
  return {&positions_[(sample * (m + 1) + grid_index) * dim_], dim_};
}

std::int64_t PathEnsemble::arrivals(std::size_t sample, std::size_t grid_index) const {
  const std::size_t m = grid_.intervals();
  if (sample >= samples_ || grid_index > m) throw std::out_of_range("PathEnsemble::arrivals");
  return arrivals_[sample * (m + 1) + grid_index];
}

PathView PathEnsemble::view() const { return PathView(*this, 0); }

PathView::PathView(const PathEnsemble& ensemble, std::size_t base)
    : ensemble_(&ensemble), base_(base) {
  if (base > ensemble.grid().intervals()) throw PreconditionError("PathView: base off grid");
}

double PathView::origin() const noexcept { return ensemble_->grid().at(base_); }

std::vector<double> PathView::times() const {
  std::vector<double> out;
  const auto& grid = ensemble_->grid();
  for (std::size_t j = base_ + 1; j <= grid.intervals(); ++j) out.push_back(grid.at(j) - origin());
  return out;
}

std::size_t PathView::index_of(double u) const {
  if (u < 0.0) throw PreconditionError("PathView: negative time");
  if (u == 0.0) return base_;
  return ensemble_->grid().index_of(origin() + u);
}

void PathView::position(std::size_t sample, std::size_t grid_index,
                        std::span<double> out) const {
  if (grid_index < base_) throw PreconditionError("PathView: time precedes view origin");
  auto at = ensemble_->position(sample, grid_index);
  if (base_ == 0) {
    std::copy(at.begin(), at.end(), out.begin());
    return;
  }
  auto origin = ensemble_->position(sample, base_);
  for (std::size_t k = 0; k < at.size(); ++k) out[k] = at[k] - origin[k];
}

std::vector<double> PathView::position(std::size_t sample, std::size_t grid_index) const {
  std::vector<double> out(dim());
  position(sample, grid_index, out);
  return out;
}

std::int64_t PathView::arrivals(std::size_t sample, std::size_t grid_index) const {
  if (grid_index < base_) throw PreconditionError("PathView: time precedes view origin");
  return ensemble_->arrivals(sample, grid_index) - ensemble_->arrivals(sample, base_);
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Draws one interval increment of length dt into out; returns the arrival
// count of the interval.
std::int64_t draw_increment(const LevyModel& model, double dt, rng::CounterStream& stream,
                            std::span<double> out) {
  return std::visit(
      Overloaded{
          [&](const GaussianDiagonal& m) -> std::int64_t {
            const std::size_t K = m.dim();
            for (std::size_t k = 0; k < K; k += 2) {
              auto [z0, z1] = rng::normal_pair(stream);
              out[k] = m.drift()[k] * dt + std::sqrt(m.variances()[k] * dt) * z0;
              if (k + 1 < K) {
                out[k + 1] = m.drift()[k + 1] * dt + std::sqrt(m.variances()[k + 1] * dt) * z1;
              }
            }
            return 0;
          },
          [&](const LpCompoundPoisson& m) -> std::int64_t {
            std::int64_t total = 0;
            for (std::size_t k = 0; k < m.dim(); ++k) {
              const double rate = m.rates()[k];
              const std::int64_t count = rng::poisson(stream, rate * dt);
              out[k] = static_cast<double>(count) * rate;
              total += count;
            }
            return total;
          },
          [&](const BernoulliCompound& m) -> std::int64_t {
            const std::int64_t count = rng::poisson(stream, m.rate() * dt);
            std::fill(out.begin(), out.end(), 0.0);
            for (std::int64_t a = 0; a < count; ++a) {
              for (std::size_t k = 0; k < m.dim(); ++k) {
                if (stream.uniform() < m.probs()[k]) out[k] += 1.0;
              }
            }
            return count;
          },
          [&](const SkellamFamily& m) -> std::int64_t {
            std::int64_t total = 0;
            for (std::size_t n = 1; n <= m.dim(); ++n) {
              const std::int64_t up = rng::poisson(stream, m.up_rate(n) * dt);
              const std::int64_t down = rng::poisson(stream, m.down_rate(n) * dt);
              out[n - 1] = static_cast<double>(up - down);
              total += up + down;
            }
            return total;
          }},
      model.variant());
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw CapacityError("sample_paths: ensemble size overflows 64 bits");
  }
  return a * b;
}

}  // namespace

PathEnsemble sample_paths(std::shared_ptr<const LevyModel> model, const TimeGrid& grid,
                          std::size_t samples, std::uint64_t seed,
                          const SampleOptions& options) {
  if (!model) throw PreconditionError("sample_paths: null model");
  if (samples == 0) throw PreconditionError("sample_paths: M must be >= 1");
  const std::size_t m = grid.intervals();
  const std::size_t K = model->dim();
  // increments + cumulative positions (doubles) and counts + cumulative counts.
  const std::uint64_t cells = checked_mul(checked_mul(samples, m + 1), K + 1);
  const std::uint64_t bytes = checked_mul(cells, 2 * sizeof(double));
  if (bytes > options.byte_limit) {
    throw CapacityError("sample_paths: M*K*m = " + std::to_string(samples) + "*" +
                        std::to_string(K) + "*" + std::to_string(m) + " needs ~" +
                        std::to_string(bytes) + " bytes, limit " +
                        std::to_string(options.byte_limit));
  }

  std::vector<double> increments(samples * m * K);
  std::vector<std::int64_t> counts(samples * m);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t j = 0; j < m; ++j) {
        rng::CounterStream stream(seed, s, static_cast<std::uint32_t>(j));
        std::span<double> out(&increments[(s * m + j) * K], K);
        counts[s * m + j] = draw_increment(*model, grid.interval_length(j), stream, out);
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads,
                                                            static_cast<unsigned>(samples)));
  if (threads == 1) {
    work(0, samples);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (samples + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(samples, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
  }
  return PathEnsemble(std::move(model), grid, samples, seed, std::move(increments),
                      std::move(counts));
}

PathEnsemble sample_paths(const LevyModel& model, const TimeGrid& grid, std::size_t samples,
                          std::uint64_t seed, const SampleOptions& options) {
  return sample_paths(std::make_shared<const LevyModel>(model), grid, samples, seed, options);
}

PathView shifted_view(const PathEnsemble& ensemble, double s) {
  return PathView(ensemble, ensemble.grid().index_of(s));
}

MonteCarloEstimate complex_mean(std::span<const Complex> values) {
  const std::size_t M = values.size();
  if (M == 0) throw PreconditionError("complex_mean: no samples");
  Complex sum(0.0, 0.0);
  for (const auto& v : values) sum += v;
  const Complex mean = sum / static_cast<double>(M);
  if (M == 1) return {mean, 0.0};
  double ss_re = 0.0;
  double ss_im = 0.0;
  for (const auto& v : values) {
    const Complex d = v - mean;
    ss_re += d.real() * d.real();
    ss_im += d.imag() * d.imag();
  }
  const double var_re = ss_re / static_cast<double>(M - 1);
  const double var_im = ss_im / static_cast<double>(M - 1);
  return {mean, std::sqrt(0.5 * (var_re + var_im) / static_cast<double>(M))};
}

RealEstimate real_mean(std::span<const double> values) {
  const std::size_t M = values.size();
  if (M == 0) throw PreconditionError("real_mean: no samples");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(M);
  if (M == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(M - 1) / static_cast<double>(M))};
}

MonteCarloEstimate empirical_charfn(const PathView& view, const FiniteFunctional& phi,
                                    double t) {
  require_within(phi, view.dim(), "empirical_charfn");
  const std::size_t j = view.index_of(t);
  const std::size_t M = view.samples();
  if (phi.empty()) return {Complex(1.0, 0.0), 0.0};
  std::vector<Complex> values(M);
  std::vector<double> x(view.dim());
  for (std::size_t s = 0; s < M; ++s) {
    view.position(s, j, x);
    const double angle = phi.pair(x);
    values[s] = Complex(std::cos(angle), std::sin(angle));
  }
  return complex_mean(values);
}

MonteCarloEstimate empirical_charfn(const PathEnsemble& ensemble, const FiniteFunctional& phi,
                                    double t) {
  return empirical_charfn(ensemble.view(), phi, t);
}

}  // namespace levyps
