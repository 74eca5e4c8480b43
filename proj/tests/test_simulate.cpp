#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "levyps/ensemble_io.hpp"
#include "levyps/errors.hpp"
#include "levyps/rng.hpp"
#include "levyps/simulate.hpp"
#include "oracles.hpp"

using namespace levyps;

namespace {

std::shared_ptr<const LevyModel> make(LevyModel m) {
  return std::make_shared<const LevyModel>(std::move(m));
}

std::vector<double> coordinate_increments(const PathEnsemble& e, std::size_t interval,
                                          std::size_t coord) {
  std::vector<double> out(e.samples());
  for (std::size_t s = 0; s < e.samples(); ++s) out[s] = e.increment(s, interval)[coord];
  return out;
}

}  // namespace

TEST(Philox, KnownAnswerVectors) {
  using rng::philox4x32_10;
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (rng::Philox4x32Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (rng::Philox4x32Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (rng::Philox4x32Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterStream, UniformRangeAndDistinctStreams) {
  rng::CounterStream a(1, 0, 0), b(1, 0, 1), c(2, 0, 0);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(a.uniform_open(), 0.0);
  }
  rng::CounterStream a2(1, 0, 0);
  EXPECT_NE(a2.next_u64(), b.next_u64());
  rng::CounterStream a3(1, 0, 0);
  EXPECT_NE(a3.next_u64(), c.next_u64());
}

TEST(Samplers, PoissonMomentsBothRegimes) {
  for (double mean : {0.0, 0.3, 4.0, 9.99, 10.0, 57.5}) {
    rng::CounterStream r(7, 1, 0);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng::poisson(r, mean));
      ASSERT_GE(k, 0.0);
      s += k;
      s2 += k * k;
    }
    const double m = s / n;
    const double var = s2 / n - m * m;
    const double se = std::sqrt(std::max(mean, 1e-300) / n);
    EXPECT_LE(std::fabs(m - mean), 5.0 * se + 1e-15) << mean;
    if (mean > 0.0) EXPECT_NEAR(var / mean, 1.0, 0.05) << mean;
  }
}

TEST(Samplers, PoissonPmfChiSquareAtLargeMean) {
  // The rejection sampler against the exact pmf on a binned range.
  const double mean = 25.0;
  rng::CounterStream r(11, 2, 0);
  const int n = 200000;
  std::vector<int> counts(60, 0);
  for (int i = 0; i < n; ++i) {
    const auto k = rng::poisson(r, mean);
    if (k < 60) ++counts[k];
  }
  double chi2 = 0.0;
  int cells = 0;
  for (int k = 10; k < 45; ++k) {
    const double e = n * oracle::poisson_pmf(mean, k);
    chi2 += (counts[k] - e) * (counts[k] - e) / e;
    ++cells;
  }
  // 35 cells; 99.9% quantile of chi2(35) is about 66.6.
  EXPECT_LT(chi2, 66.6);
}

TEST(Samplers, NormalMoments) {
  rng::CounterStream r(3, 4, 0);
  std::vector<double> xs;
  for (int i = 0; i < 100000; ++i) {
    auto [a, b] = rng::normal_pair(r);
    xs.push_back(a);
    xs.push_back(b);
  }
  const double d = oracle::ks_statistic(xs, [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); });
  EXPECT_LT(d, 1.9495 / std::sqrt(static_cast<double>(xs.size())));
}

TEST(TimeGrid, ValidatesAndIndexes) {
  EXPECT_THROW(TimeGrid({}), PreconditionError);
  EXPECT_THROW(TimeGrid({0.0}), PreconditionError);
  EXPECT_THROW(TimeGrid({1.0, 0.5}), PreconditionError);
  const TimeGrid g({0.5, 1.0});
  EXPECT_EQ(g.at(0), 0.0);
  EXPECT_EQ(g.index_of(1.0), 2u);
  EXPECT_EQ(g.index_of(0.0), 0u);
  EXPECT_THROW(g.index_of(0.7), PreconditionError);
  EXPECT_DOUBLE_EQ(g.interval_length(1), 0.5);
}

TEST(SamplePaths, DeterministicAndThreadInvariant) {
  const LevyModel models[] = {GaussianDiagonal({0.1, 0.0}, {1.0, 0.25}), LpCompoundPoisson({1.0, 0.5}),
                              BernoulliCompound(1.5, {0.3, 0.6}), SkellamFamily({0.2, 0.7, 0.5})};
  const TimeGrid grid({0.25, 0.5, 1.0});
  for (const auto& m : models) {
    const auto a = sample_paths(m, grid, 1001, 42);
    const auto b = sample_paths(m, grid, 1001, 42, {.threads = 3});
    const auto c = sample_paths(m, grid, 1001, 43);
    EXPECT_EQ(a.increments(), b.increments()) << m.kind();
    EXPECT_EQ(a.jump_counts(), b.jump_counts()) << m.kind();
    EXPECT_NE(a.increments(), c.increments()) << m.kind();
  }
  const auto one = sample_paths(SkellamFamily({0.5}), TimeGrid({1.0}), 1, 9);
  EXPECT_EQ(one.increments(), sample_paths(SkellamFamily({0.5}), TimeGrid({1.0}), 1, 9).increments());
}

TEST(SamplePaths, PrefixStableInSampleCount) {
  // One stream per (sample, interval): adding samples leaves earlier ones intact.
  const SkellamFamily m({0.3, 0.6});
  const TimeGrid grid({0.5, 1.0});
  const auto small = sample_paths(m, grid, 100, 5);
  const auto big = sample_paths(m, grid, 300, 5);
  for (std::size_t s = 0; s < 100; ++s) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto x = small.increment(s, j), y = big.increment(s, j);
      ASSERT_TRUE(std::equal(x.begin(), x.end(), y.begin()));
    }
  }
}

TEST(SamplePaths, OriginAndCumulativeSums) {
  const auto e = sample_paths(GaussianDiagonal({0.5}, {2.0}), TimeGrid({0.3, 0.7, 1.0}), 50, 1);
  for (std::size_t s = 0; s < 50; ++s) {
    EXPECT_EQ(e.position(s, 0)[0], 0.0);
    double acc = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      acc += e.increment(s, j)[0];
      EXPECT_EQ(e.position(s, j + 1)[0], acc);
    }
  }
}

TEST(SamplePaths, OneSidedSkellamHasNonnegativeIntegerIncrements) {
  const auto e = sample_paths(SkellamFamily({1.0, 0.0}), TimeGrid({0.5, 2.0}), 2000, 3);
  for (std::size_t s = 0; s < e.samples(); ++s) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto x = e.increment(s, j);
      EXPECT_GE(x[0], 0.0);
      EXPECT_LE(x[1], 0.0);
      EXPECT_EQ(x[0], std::round(x[0]));
    }
  }
}

TEST(SamplePaths, SkellamMeansMatchDrift) {
  const SkellamFamily m({0.9, 0.1, 0.75, 0.3});
  const auto e = sample_paths(m, TimeGrid({1.0}), 100000, 17);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto xs = coordinate_increments(e, 0, n - 1);
    const auto est = real_mean(xs);
    EXPECT_LE(std::fabs(est.mean - m.drift(n)), 5.0 * est.std_error) << n;
  }
}

TEST(SamplePaths, GaussianAndBernoulliMoments) {
  const GaussianDiagonal g({0.5, -1.0}, {1.0, 0.25});
  const auto e = sample_paths(g, TimeGrid({2.0}), 100000, 23);
  for (std::size_t n = 0; n < 2; ++n) {
    const auto xs = coordinate_increments(e, 0, n);
    const auto est = real_mean(xs);
    EXPECT_LE(std::fabs(est.mean - 2.0 * g.drift()[n]), 5.0 * est.std_error);
    double var = 0.0;
    for (double x : xs) var += (x - est.mean) * (x - est.mean);
    var /= static_cast<double>(xs.size() - 1);
    EXPECT_NEAR(var / (2.0 * g.variances()[n]), 1.0, 0.03);
  }
  const BernoulliCompound b(2.0, {0.3, 0.6});
  const auto eb = sample_paths(b, TimeGrid({1.0}), 100000, 29);
  for (std::size_t n = 0; n < 2; ++n) {
    const auto est = real_mean(coordinate_increments(eb, 0, n));
    EXPECT_LE(std::fabs(est.mean - 2.0 * b.probs()[n]), 5.0 * est.std_error);
  }
  std::vector<double> counts(eb.samples());
  for (std::size_t s = 0; s < eb.samples(); ++s) counts[s] = static_cast<double>(eb.jump_count(s, 0));
  const auto nc = real_mean(counts);
  EXPECT_LE(std::fabs(nc.mean - 2.0), 5.0 * nc.std_error);
}

TEST(SamplePaths, StationaryIncrementsKolmogorovSmirnov) {
  // Equal-length intervals have the same law: two-sample KS at alpha = 0.001.
  const std::size_t M = 10000;
  const double critical = 1.9495 * std::sqrt(2.0 / M);
  int rejections = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto e = sample_paths(GaussianDiagonal({0.2}, {1.0}), TimeGrid({0.5, 1.0}), M, seed);
    if (oracle::ks_two_sample(coordinate_increments(e, 0, 0), coordinate_increments(e, 1, 0)) > critical)
      ++rejections;
  }
  // Expected 0.1 rejections; P(>= 3) is below 2e-4.
  EXPECT_LE(rejections, 2);
}

TEST(SamplePaths, DisjointIncrementsUncorrelated) {
  const std::size_t M = 100000;
  const auto e = sample_paths(SkellamFamily({0.8}), TimeGrid({0.5, 1.0}), M, 31);
  const auto a = coordinate_increments(e, 0, 0), b = coordinate_increments(e, 1, 0);
  const auto ma = real_mean(a), mb = real_mean(b);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    cov += (a[i] - ma.mean) * (b[i] - mb.mean);
    va += (a[i] - ma.mean) * (a[i] - ma.mean);
    vb += (b[i] - mb.mean) * (b[i] - mb.mean);
  }
  EXPECT_LE(std::fabs(cov / std::sqrt(va * vb)), 5.0 / std::sqrt(static_cast<double>(M)));
}

TEST(SamplePaths, CapacityErrorBeforeAllocation) {
  EXPECT_THROW(sample_paths(SkellamFamily(std::vector<double>(1000, 0.5)), TimeGrid({1.0}),
                            std::size_t{1} << 40, 1),
               CapacityError);
  EXPECT_THROW(sample_paths(SkellamFamily({0.5}), TimeGrid({1.0}), 1000, 1, {.byte_limit = 100}),
               CapacityError);
}

TEST(ShiftedView, IdentityAtZeroAndTelescoping) {
  const auto e = sample_paths(SkellamFamily({0.3, 0.8}), TimeGrid({0.5, 1.0, 1.5}), 200, 2);
  const auto id = shifted_view(e, 0.0);
  const auto v = shifted_view(e, 0.5);
  EXPECT_THROW(shifted_view(e, 0.7), PreconditionError);
  for (std::size_t s = 0; s < 200; ++s) {
    for (std::size_t j = 0; j <= 3; ++j) {
      const auto p = e.position(s, j);
      EXPECT_EQ(id.position(s, j), std::vector<double>(p.begin(), p.end()));
    }
    for (double u : {0.5, 1.0}) {
      const auto shifted = v.position(s, v.index_of(u));
      const auto base = e.position(s, e.grid().index_of(0.5));
      const auto target = e.position(s, e.grid().index_of(0.5 + u));
      for (std::size_t n = 0; n < 2; ++n) EXPECT_EQ(shifted[n] + base[n], target[n]);
    }
  }
}

TEST(ShiftedView, DistributionMatchesModel) {
  const LevyModel m = GaussianDiagonal({0.3, 0.0}, {1.0, 0.5});
  const auto e = sample_paths(m, TimeGrid({0.5, 1.5}), 100000, 6);
  const auto v = shifted_view(e, 0.5);
  const FiniteFunctional phi{{1, 0.8}, {2, -1.1}};
  const auto est = empirical_charfn(v, phi, 1.0);
  EXPECT_LE(std::abs(est.estimate - characteristic_fn(m, phi, 1.0)), 5.0 * est.std_error);
}

TEST(EmpiricalCharfn, ZeroAndClosedForms) {
  const auto e = sample_paths(GaussianDiagonal({0.0}, {1.0}), TimeGrid({1.0}), 100000, 1);
  const auto zero = empirical_charfn(e, {}, 1.0);
  EXPECT_EQ(zero.estimate, Complex(1.0, 0.0));
  EXPECT_EQ(zero.std_error, 0.0);
  const auto est = empirical_charfn(e, FiniteFunctional::axis(1, 1.0), 1.0);
  EXPECT_LE(std::abs(est.estimate - std::exp(-0.5)), 5.0 * est.std_error);

  const SkellamFamily sk(std::vector<double>(8, 0.5));
  const auto es = sample_paths(sk, TimeGrid({1.0}), 100000, 8);
  rng::CounterStream r(8, 99, 0);
  for (int i = 0; i < 5; ++i) {
    FiniteFunctional phi;
    for (std::size_t n = 1; n <= 8; ++n) phi.set(n, std::numbers::pi * (2.0 * r.uniform() - 1.0));
    const auto mc = empirical_charfn(es, phi, 1.0);
    EXPECT_LE(std::abs(mc.estimate - characteristic_fn(sk, phi, 1.0)), 5.0 * mc.std_error);
  }
}

TEST(EnsembleIo, CsvAndBinaryRoundTrip) {
  const auto model = make(BernoulliCompound(1.0, {0.3, 0.6, 0.1}));
  const TimeGrid grid({0.5, 1.0});
  const auto e = sample_paths(model, grid, 37, 12);

  std::stringstream csv;
  io::write_ensemble_csv(csv, e);
  const auto from_csv = io::read_ensemble_csv(csv, model, grid, 12);
  EXPECT_EQ(from_csv.increments(), e.increments());
  EXPECT_EQ(from_csv.jump_counts(), e.jump_counts());

  std::stringstream bin;
  io::write_ensemble_binary(bin, e);
  const auto from_bin = io::read_ensemble_binary(bin, model);
  EXPECT_EQ(from_bin.increments(), e.increments());
  EXPECT_EQ(from_bin.jump_counts(), e.jump_counts());
  EXPECT_EQ(from_bin.grid(), grid);
  EXPECT_EQ(from_bin.seed(), 12u);

  const auto gmodel = make(GaussianDiagonal({0.1}, {0.7}));
  const auto g = sample_paths(gmodel, grid, 20, 4);
  std::stringstream gcsv;
  io::write_ensemble_csv(gcsv, g);
  EXPECT_EQ(io::read_ensemble_csv(gcsv, gmodel, grid, 4).increments(), g.increments());
}

TEST(EnsembleIo, RejectsCorruptInput) {
  const auto model = make(SkellamFamily({0.5}));
  std::stringstream bad("not,a,header\n");
  EXPECT_ANY_THROW(io::read_ensemble_csv(bad, model, TimeGrid({1.0}), 1));
  std::stringstream badbin("LEVYENS0........");
  EXPECT_ANY_THROW(io::read_ensemble_binary(badbin, model));
}
