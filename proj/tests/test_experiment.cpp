#include <gtest/gtest.h>

#include "levyps/errors.hpp"
#include "levyps/experiment/config.hpp"
#include "levyps/experiment/suites.hpp"
#include "levyps/rng.hpp"

using namespace levyps;
using namespace levyps::experiment;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST(Config, DefaultsAreDesk) {
  const auto c = parse_config("");
  EXPECT_EQ(c.K, 8u);
  EXPECT_EQ(c.M, 100000u);
  EXPECT_EQ(c.grid, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(c.tolerance.closed_form, 1e-12);
  EXPECT_EQ(c.tolerance.mc_sigma, 5.0);
  EXPECT_EQ(c.selected_suites().size(), std::size(kSuites));
}

TEST(Config, ErrorsNameFieldAndLine) {
  EXPECT_EQ(field_of("K: 0\n"), "K");
  EXPECT_EQ(field_of("M: 10\nbogus: 1\n"), "bogus");
  EXPECT_EQ(field_of("skellam:\n  lambda: constant 1.5\n"), "skellam.lambda");
  EXPECT_EQ(field_of("gaussian:\n  sigma: 1\n"), "gaussian.sigma");
  EXPECT_EQ(field_of("grid: [1.0, 0.5]\n"), "grid");
  EXPECT_EQ(field_of("suite: nope\n"), "suite");
  EXPECT_EQ(field_of("tolerance:\n  suites:\n    all:\n      mc_sigma: 3\n"), "tolerance.suites.all");
  EXPECT_EQ(field_of("bernoulli:\n  probs: [0.5, 1.0]\n"), "bernoulli.probs");
  EXPECT_EQ(field_of("bernoulli:\n  rate: -1\n"), "bernoulli.rate");
  EXPECT_EQ(field_of("gaussian:\n  q: constant 0\n"), "gaussian.q");
  try {
    parse_config("K: 2\nskellam:\n  lambda: [0.5, 2]\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "skellam.lambda");
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_config("M: 10\nK: 0\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("\"K\""), std::string::npos);
  }
}

TEST(Config, OverridesApplyPerSuite) {
  const auto c = parse_config("tolerance:\n  mc_sigma: 4\n  suites:\n    charfn:\n      mc_sigma: 6\n");
  EXPECT_EQ(c.tolerances_for("charfn").mc_sigma, 6.0);
  EXPECT_EQ(c.tolerances_for("units").mc_sigma, 4.0);
}

TEST(Config, EchoIsIdempotent) {
  for (const char* text : {"", "K: 3\ngrid: [0.25, 1.5, 2]\ntolerance:\n  suites:\n    units:\n      closed_form: 1e-10\n",
                           "skellam:\n  lambda: [0.1, 0.2, 0.3]\nK: 3\nout: \"dir with: colon\"\n"}) {
    const auto once = print_effective_config(parse_config(text));
    EXPECT_EQ(print_effective_config(parse_config(once)), once) << text;
  }
}

TEST(Config, SemanticallyEqualConfigsCanonicalizeIdentically) {
  // Property: random configs rendered two different ways (key order, number
  // spelling, explicit vs omitted defaults) print the same canonical text.
  rng::CounterStream r(2024, 0, 0);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(r.uniform() * n); };
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t K = 1 + pick(10);
    const double lam = 0.125 * static_cast<double>(pick(9));
    const double rate = 0.5 * static_cast<double>(1 + pick(6));
    const unsigned seed = static_cast<unsigned>(pick(100000));
    const bool explicit_defaults = pick(2) == 0;

    std::vector<std::string> a_lines = {
        "K: " + std::to_string(K),
        "seed: " + std::to_string(seed),
        "skellam:\n  lambda: constant " + format_double(lam),
        "bernoulli:\n  rate: " + format_double(rate),
    };
    std::vector<std::string> b_lines = {
        "bernoulli:\n  probs: geometric 0.50\n  rate: " + std::to_string(rate),
        "skellam:\n  lambda: \"constant " + std::to_string(lam) + "\"",
        "seed: " + std::to_string(seed),
        "K: " + std::to_string(K),
    };
    if (explicit_defaults) b_lines.push_back("M: 100000\ngrid: [0.50, 1.00]\ntolerance:\n  mc_sigma: 5.0");
    // Shuffle b deterministically.
    for (std::size_t i = b_lines.size(); i > 1; --i) std::swap(b_lines[i - 1], b_lines[pick(i)]);

    std::string a, b;
    for (const auto& l : a_lines) a += l + "\n";
    for (const auto& l : b_lines) b += l + "\n";
    ASSERT_EQ(print_effective_config(parse_config(a)), print_effective_config(parse_config(b)))
        << a << "---\n" << b;
  }
}

TEST(Report, PassDerivesFromStatisticAndTolerance) {
  EXPECT_TRUE(make_record("s", "c", "a", 1.0, 1.0).pass);
  EXPECT_FALSE(make_record("s", "c", "a", 1.0 + 1e-15, 1.0).pass);
  EXPECT_FALSE(make_record("s", "c", "a", std::nan(""), 1.0).pass);
  Report r;
  r.checks.push_back(make_record("s", "ok", "a", 0.0, 0.0));
  r.checks.push_back(make_record("s", "bad", "a", 2.0, 1.0, 0.5));
  EXPECT_EQ(r.passed(), 1u);
  EXPECT_EQ(r.failing_ids(), std::vector<std::string>{"s/bad"});
  const auto j = to_json(r, false);
  EXPECT_EQ(j["schema"], "levyps.report/1");
  EXPECT_FALSE(j.contains("wall_clock_seconds"));
  EXPECT_TRUE(to_json(r).contains("wall_clock_seconds"));
  EXPECT_EQ(j["checks"][1]["stderr"], 0.5);
  EXPECT_TRUE(j["checks"][0]["stderr"].is_null());
}

TEST(Run, DiscriminateIdenticalProfilesPasses) {
  auto c = parse_config("suite: discriminate\n");
  const auto report = run(c);
  ASSERT_FALSE(report.checks.empty());
  EXPECT_EQ(report.checks.front().check, "configured_profiles/max_gap");
  EXPECT_EQ(report.checks.front().statistic, 0.0);
  EXPECT_TRUE(report.all_passed());
  EXPECT_TRUE(report.artifacts.count("discriminator_gaps.csv"));
}

TEST(Run, DiscriminateDetectsConfiguredDifference) {
  const auto report = run(parse_config("suite: discriminate\nK: 6\ndiscriminate:\n  lambda_b: [0.5, 0.5, 0.5, 0.9, 0.5, 0.5]\n"));
  EXPECT_EQ(report.checks.front().check, "configured_profiles/first_coordinate");
  EXPECT_TRUE(report.checks.front().pass);
}

TEST(Run, EveryRecordCarriesAnAnchorAndIsDeterministic) {
  const auto c = parse_config("M: 2000\nsuite: all\n");
  const auto a = run(c);
  for (const auto& rec : a.checks) EXPECT_FALSE(rec.anchor.empty()) << rec.check;
  EXPECT_EQ(to_json(a, false).dump(), to_json(run(c), false).dump());
  // Only the echoed thread count may differ across thread counts.
  auto c4 = c;
  c4.threads = 4;
  const auto b = run(c4);
  EXPECT_EQ(to_json(a, false)["checks"].dump(), to_json(b, false)["checks"].dump());
  EXPECT_EQ(a.artifacts, b.artifacts);
}

TEST(Run, UnitsNeedsTwoGridTimes) {
  EXPECT_THROW(run(parse_config("suite: units\ngrid: [1.0]\n")), ConfigError);
}
