#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "levyps/errors.hpp"
#include "levyps/functional.hpp"
#include "levyps/model.hpp"
#include "levyps/param_rule.hpp"
#include "levyps/skellam.hpp"
#include "oracles.hpp"

using namespace levyps;
constexpr double kPi = std::numbers::pi;

TEST(FiniteFunctional, DropsZerosAndSortsSupport) {
  FiniteFunctional f{{3, 1.5}, {1, 0.0}, {2, -2.0}};
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.support(), (std::vector<std::size_t>{2, 3}));
  f.set(2, 0.0);
  EXPECT_EQ(f.support(), (std::vector<std::size_t>{3}));
  EXPECT_EQ(f.max_index(), 3u);
  EXPECT_TRUE((f - f).empty());
}

TEST(FiniteFunctional, RejectsIndexZeroAndOutOfTruncation) {
  FiniteFunctional f;
  EXPECT_THROW(f.set(0, 1.0), PreconditionError);
  EXPECT_THROW(require_within(FiniteFunctional::axis(5, 1.0), 4, "test"), PreconditionError);
  EXPECT_NO_THROW(require_within(FiniteFunctional::axis(4, 1.0), 4, "test"));
}

TEST(FiniteFunctional, PairAndDenseRoundTrip) {
  const std::vector<double> dense{0.5, 0.0, -1.0};
  const auto f = FiniteFunctional::from_dense(dense);
  EXPECT_EQ(f.to_dense(3), dense);
  const std::vector<double> x{2.0, 7.0, 1.0};
  EXPECT_DOUBLE_EQ(f.pair(x), 0.0);
}

TEST(Truncation, RejectsZero) { EXPECT_THROW(Truncation(0), PreconditionError); }

TEST(Models, ValidateParameters) {
  EXPECT_THROW(GaussianDiagonal({0.0}, {0.0}), PreconditionError);
  EXPECT_THROW(GaussianDiagonal({0.0, 0.0}, {1.0}), PreconditionError);
  EXPECT_THROW(LpCompoundPoisson({1.0, -1.0}), PreconditionError);
  EXPECT_THROW(BernoulliCompound(1.0, {1.0}), PreconditionError);
  EXPECT_THROW(BernoulliCompound(-1.0, {0.5}), PreconditionError);
  EXPECT_THROW(SkellamFamily({1.5}), PreconditionError);
  EXPECT_NO_THROW(SkellamFamily({0.0, 1.0}));
}

TEST(Models, SkellamWeightsAndMass) {
  for (std::size_t n = 1; n <= 30; ++n) EXPECT_EQ(SkellamFamily::weight(n), std::ldexp(1.0, -int(n)));
  for (std::size_t K : {1u, 4u, 8u, 20u}) {
    SkellamFamily m(std::vector<double>(K, 0.3));
    EXPECT_DOUBLE_EQ(m.levy_mass(), 1.0 - std::ldexp(1.0, -int(K)));
  }
}

TEST(LevyExponent, ZeroAtOrigin) {
  const LevyModel models[] = {GaussianDiagonal({0.3, -1.0}, {1.0, 0.5}),
                              LpCompoundPoisson({1.0, 0.5}), BernoulliCompound(2.0, {0.2, 0.7}),
                              SkellamFamily({0.1, 0.9})};
  for (const auto& m : models) {
    EXPECT_EQ(levy_exponent(m, {}), Complex(0.0, 0.0)) << m.kind();
    EXPECT_EQ(characteristic_fn(m, {}, 1.3), Complex(1.0, 0.0)) << m.kind();
  }
}

TEST(LevyExponent, SymmetricSkellamIsReal) {
  const SkellamFamily m(std::vector<double>(6, 0.5));
  const FiniteFunctional phi{{1, 0.7}, {3, -2.0}, {6, 3.0}};
  const Complex psi = levy_exponent(m, phi);
  EXPECT_EQ(psi.imag(), 0.0);
  double expected = 0.0;
  for (const auto& [n, v] : phi) expected += std::ldexp(1.0, -int(n)) * (std::cos(v) - 1.0);
  EXPECT_NEAR(psi.real(), expected, 1e-15);
}

TEST(LevyExponent, SkellamMatchesPoissonSeries) {
  const SkellamFamily m({1.0, 0.0, 0.5});
  const FiniteFunctional phi{{1, kPi / 2}, {2, kPi / 2}};
  Complex oracle(0.0, 0.0);
  for (std::size_t n = 1; n <= 3; ++n) {
    oracle += oracle::log_charfn_by_series(m.up_rate(n), m.down_rate(n), phi[n], 1.0);
  }
  EXPECT_NEAR(std::abs(levy_exponent(m, phi) - oracle), 0.0, 1e-13);
}

TEST(LevyExponent, CenteredGaussianCharfnIsRealInUnitInterval) {
  const GaussianDiagonal g({0.0, 0.0, 0.0}, {1.0, 0.25, 0.1});
  const FiniteFunctional phi{{1, 1.0}, {2, -3.0}, {3, 0.5}};
  const Complex c = characteristic_fn(g, phi, 0.7);
  EXPECT_EQ(c.imag(), 0.0);
  EXPECT_GT(c.real(), 0.0);
  EXPECT_LE(c.real(), 1.0);
  EXPECT_NEAR(c.real(), std::exp(-0.35 * (1.0 + 0.25 * 9 + 0.1 * 0.25)), 1e-15);
}

TEST(LevyExponent, OneSidedSkellamAtPi) {
  const SkellamFamily m({1.0});
  const Complex c = characteristic_fn(m, FiniteFunctional::axis(1, kPi), 1.0);
  EXPECT_NEAR(c.real(), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(c.imag(), 0.0, 1e-15);
  // pmf-summation cross-check
  Complex sum(0.0, 0.0);
  for (long k = 0; k <= 60; ++k) sum += oracle::poisson_pmf(0.5, k) * std::polar(1.0, kPi * k);
  EXPECT_NEAR(std::abs(c - sum), 0.0, 1e-14);
}

TEST(LevyExponent, BernoulliAndLpClosedForms) {
  const BernoulliCompound b(2.0, {0.25, 0.5});
  const FiniteFunctional phi{{1, 1.0}, {2, 0.5}};
  const Complex e1 = 0.25 * std::polar(1.0, 1.0) + 0.75;
  const Complex e2 = 0.5 * std::polar(1.0, 0.5) + 0.5;
  EXPECT_NEAR(std::abs(levy_exponent(b, phi) - 2.0 * (e1 * e2 - 1.0)), 0.0, 1e-15);

  const LpCompoundPoisson lp({1.0, 0.5});
  const Complex expected = 1.0 * (std::polar(1.0, 1.0) - 1.0) + 0.5 * (std::polar(1.0, 0.25) - 1.0);
  EXPECT_NEAR(std::abs(levy_exponent(lp, phi) - expected), 0.0, 1e-15);
}

TEST(LevyExponent, RejectsOutOfTruncationAndBadTime) {
  const SkellamFamily m({0.5, 0.5});
  EXPECT_THROW(levy_exponent(m, FiniteFunctional::axis(3, 1.0)), PreconditionError);
  EXPECT_THROW(characteristic_fn(m, {}, 0.0), PreconditionError);
}

TEST(ParamRule, ParsesAndExpands) {
  EXPECT_EQ(ParamRule::parse("constant 0.5").expand(Truncation(3)), (std::vector<double>{0.5, 0.5, 0.5}));
  EXPECT_EQ(ParamRule::parse("alternating 0.2, 0.8").expand(Truncation(3)),
            (std::vector<double>{0.2, 0.8, 0.2}));
  EXPECT_EQ(ParamRule::parse("harmonic").expand(Truncation(2)), (std::vector<double>{1.0, 0.5}));
  EXPECT_EQ(ParamRule::parse("power 2").expand(Truncation(2)), (std::vector<double>{1.0, 0.25}));
  EXPECT_EQ(ParamRule::parse("geometric 0.5").expand(Truncation(2)), (std::vector<double>{0.5, 0.25}));
  EXPECT_EQ(ParamRule::parse("[1, 2, 3]").expand(Truncation(2)), (std::vector<double>{1.0, 2.0}));
  EXPECT_THROW(ParamRule::parse("[1]").expand(Truncation(2)), std::invalid_argument);
  EXPECT_THROW(ParamRule::parse("cubic 3"), std::invalid_argument);
  EXPECT_THROW(ParamRule::parse("constant x"), std::invalid_argument);
}

TEST(ParamRule, CanonicalTextRoundTrips) {
  for (const char* text : {"constant 0.1", "alternating 0.2, 0.8", "harmonic", "power 1.5",
                           "geometric 0.3", "[0.1, 0.2, 1e-300]"}) {
    const auto rule = ParamRule::parse(text);
    EXPECT_EQ(ParamRule::parse(rule.to_string()), rule) << text;
    EXPECT_EQ(ParamRule::parse(rule.to_string()).to_string(), rule.to_string());
  }
}
