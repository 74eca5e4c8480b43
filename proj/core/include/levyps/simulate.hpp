#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "levyps/functional.hpp"
#include "levyps/model.hpp"

namespace levyps {

// Strictly increasing positive observation times; t_0 = 0 is implicit.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  std::size_t intervals() const noexcept { return times_.size(); }
  // Time at grid index j, with index 0 the implicit origin.
  double at(std::size_t j) const;
  double interval_length(std::size_t interval) const;
  // Grid index of time t (0 for the origin); throws PreconditionError if t
  // is not within 1e-12 relative of a grid point.
  std::size_t index_of(double t) const;
  bool contains(double t) const noexcept;

  const std::vector<double>& times() const noexcept { return times_; }
  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> times_;
};

class PathView;

// M independent sample paths sampled on a grid.  Storage is
// [sample][interval][coordinate] for increments and [sample][interval] for
// Poisson arrival counts (zero for Gaussian models).
class PathEnsemble {
 public:
  PathEnsemble(std::shared_ptr<const LevyModel> model, TimeGrid grid, std::size_t samples,
               std::uint64_t seed, std::vector<double> increments,
               std::vector<std::int64_t> jump_counts);

  const LevyModel& model() const noexcept { return *model_; }
  std::shared_ptr<const LevyModel> model_ptr() const noexcept { return model_; }
  const TimeGrid& grid() const noexcept { return grid_; }
  std::size_t samples() const noexcept { return samples_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const double> increment(std::size_t sample, std::size_t interval) const;
  std::int64_t jump_count(std::size_t sample, std::size_t interval) const;

  // L_{t_j}; grid index 0 yields the zero vector.
  std::span<const double> position(std::size_t sample, std::size_t grid_index) const;
  // N_{t_j}, cumulative arrivals.
  std::int64_t arrivals(std::size_t sample, std::size_t grid_index) const;

  const std::vector<double>& increments() const noexcept { return increments_; }
  const std::vector<std::int64_t>& jump_counts() const noexcept { return jump_counts_; }

  PathView view() const;

 private:
  std::shared_ptr<const LevyModel> model_;
  TimeGrid grid_;
  std::size_t samples_;
  std::size_t dim_;
  std::uint64_t seed_;
  std::vector<double> increments_;
  std::vector<std::int64_t> jump_counts_;
  // Cumulative sums with a leading zero row per sample: [sample][0..m][coord].
  std::vector<double> positions_;
  std::vector<std::int64_t> arrivals_;
};

// Read-only window on an ensemble starting at grid index `base`.  Its time u
// reads L_{s+u} - L_s where s = grid.at(base).  The ensemble must outlive
// the view.
class PathView {
 public:
  PathView(const PathEnsemble& ensemble, std::size_t base);

  const PathEnsemble& ensemble() const noexcept { return *ensemble_; }
  std::size_t samples() const noexcept { return ensemble_->samples(); }
  std::size_t dim() const noexcept { return ensemble_->dim(); }
  double origin() const noexcept;
  std::size_t base() const noexcept { return base_; }

  // View times t_j - s for grid indices j > base.
  std::vector<double> times() const;
  // Ensemble grid index for view time u; throws if u is not on the grid.
  std::size_t index_of(double u) const;

  void position(std::size_t sample, std::size_t grid_index, std::span<double> out) const;
  std::vector<double> position(std::size_t sample, std::size_t grid_index) const;
  std::int64_t arrivals(std::size_t sample, std::size_t grid_index) const;

 private:
  const PathEnsemble* ensemble_;
  std::size_t base_;
};

// Bytes above which sample_paths refuses to allocate.
inline constexpr std::uint64_t kDefaultEnsembleByteLimit = std::uint64_t{8} << 30;

struct SampleOptions {
  unsigned threads = 1;
  std::uint64_t byte_limit = kDefaultEnsembleByteLimit;
};

PathEnsemble sample_paths(std::shared_ptr<const LevyModel> model, const TimeGrid& grid,
                          std::size_t samples, std::uint64_t seed,
                          const SampleOptions& options = {});
PathEnsemble sample_paths(const LevyModel& model, const TimeGrid& grid, std::size_t samples,
                          std::uint64_t seed, const SampleOptions& options = {});

// Shift sigma_s: the view whose time u reads L_{s+u} - L_s.  s must be a grid
// point (0 allowed).
PathView shifted_view(const PathEnsemble& ensemble, double s);

struct MonteCarloEstimate {
  Complex estimate;
  double std_error;
};

// (1/M) sum exp(i<phi, L_t>) with standard error
// sqrt((sd_re^2 + sd_im^2) / 2) / sqrt(M).
MonteCarloEstimate empirical_charfn(const PathView& view, const FiniteFunctional& phi,
                                    double t);
MonteCarloEstimate empirical_charfn(const PathEnsemble& ensemble, const FiniteFunctional& phi,
                                    double t);

// Mean and standard error of complex per-sample values, same convention as
// empirical_charfn.
MonteCarloEstimate complex_mean(std::span<const Complex> values);

struct RealEstimate {
  double mean;
  double std_error;
};
RealEstimate real_mean(std::span<const double> values);

}  // namespace levyps
